"""
Decorators for command error handling and timing
"""

import logging
import sys
import time
from functools import wraps

from .branch_data import BranchDataError
from .classifier import IncompatibleDatumError
from .config import Config
from .dessins import InvalidDessinError, UnsupportedDatumError
from .diagrams import DiagramError
from .oracle import BudgetExceededError

logger = logging.getLogger(__name__)

USAGE_ERRORS = (BranchDataError, InvalidDessinError, UnsupportedDatumError, DiagramError, ValueError)


def error_handler(func):
    """Decorator mapping handler exceptions to exit codes"""
    @wraps(func)
    def wrapper(self, args):
        try:
            return func(self, args)
        except BudgetExceededError as e:
            logger.warning(f"Budget exhausted in {func.__name__}: {e}")
            print(f"⏳ undecided: {e}", file=sys.stderr)
            return Config.EXIT_UNDECIDED
        except IncompatibleDatumError as e:
            logger.info(f"{func.__name__}: {e}")
            print(f"❌ {e}", file=sys.stderr)
            return Config.EXIT_NEGATIVE
        except USAGE_ERRORS as e:
            logger.error(f"Invalid input in {func.__name__}: {e}")
            print(f"❌ {e}", file=sys.stderr)
            return Config.EXIT_USAGE
        except OSError as e:
            logger.error(f"Cannot read input in {func.__name__}: {e}")
            print(f"❌ {e}", file=sys.stderr)
            return Config.EXIT_USAGE
        except Exception as e:
            logger.exception(f"Error in {func.__name__}: {e}")
            print(f"💥 internal error: {e!r}", file=sys.stderr)
            return Config.EXIT_INTERNAL

    return wrapper


def timed(func):
    """Decorator logging the wall time of a handler"""
    @wraps(func)
    def wrapper(self, args):
        started = time.perf_counter()
        try:
            return func(self, args)
        finally:
            logger.debug(f"{func.__name__} took {time.perf_counter() - started:.3f}s")

    return wrapper
