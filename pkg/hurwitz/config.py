"""
Configuration settings for the Hurwitz realizability toolkit
"""

import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    # Oracle Configuration
    ORACLE_BUDGET = int(os.getenv("HURWITZ_ORACLE_BUDGET", str(10**9)))
    COUNT_CANONICAL_MAX_DEGREE = int(os.getenv("HURWITZ_COUNT_CANONICAL_MAX_DEGREE", "8"))

    # Worker Configuration
    WORKERS = int(os.getenv("HURWITZ_WORKERS", "1"))

    # Sweep Configuration
    SWEEP_DMAX = int(os.getenv("HURWITZ_SWEEP_DMAX", "8"))
    SWEEP_GENUS_MAX = int(os.getenv("HURWITZ_SWEEP_GENUS_MAX", "2"))
    REPORT_DIR = os.getenv("HURWITZ_REPORT_DIR", "reports")

    # Logging Configuration
    LOG_LEVEL = os.getenv("HURWITZ_LOG_LEVEL", "INFO")
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Exit codes (stable contract for scripting)
    EXIT_OK = 0
    EXIT_NEGATIVE = 1
    EXIT_USAGE = 2
    EXIT_UNDECIDED = 3
    EXIT_INTERNAL = 4
