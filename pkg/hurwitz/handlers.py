"""
Command handlers for the Hurwitz realizability toolkit
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict

from .branch_data import BranchDatum, check_compatibility
from .checkerboard import build_surface_data, enumerate_minimal_graphs, enumerate_minimal_graphs_bruteforce
from .classifier import Classification, Verdict, classify
from .config import Config
from .decorators import error_handler, timed
from .dessins import count_dessins, enumerate_dessins
from .diagrams import build_sphere_odd
from .messages import Messages
from .oracle import Constellation, Decision, DecisionStatus, decide, verify
from .reports import FAMILIES, ReportStore, run_sweep

logger = logging.getLogger(__name__)

DECISION_EXIT = {
    DecisionStatus.WITNESS: Config.EXIT_OK,
    DecisionStatus.UNREALIZABLE: Config.EXIT_NEGATIVE,
    DecisionStatus.UNSUPPORTED: Config.EXIT_USAGE,
}

VERDICT_EXIT = {
    Verdict.REALIZABLE: Config.EXIT_OK,
    Verdict.EXCEPTIONAL: Config.EXIT_NEGATIVE,
    Verdict.OUTSIDE_SCOPE: Config.EXIT_UNDECIDED,
}


class UsageError(ValueError):
    pass


def read_json(source: str) -> Any:
    """JSON from '-' (stdin), a file path, or the literal text"""
    if source == "-":
        text = sys.stdin.read()
    elif os.path.isfile(source):
        with open(source, encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = source
    return json.loads(text)


def load_datum(source: str) -> BranchDatum:
    return BranchDatum.from_json(read_json(source))


class CommandHandlers:
    def __init__(self, out=None):
        self.out = out

    def emit(self, args, payload: Dict[str, Any], text: str):
        """Results go to stdout: JSON with --json, text otherwise"""
        stream = self.out or sys.stdout
        if getattr(args, "json", False):
            print(json.dumps(payload, indent=2), file=stream)
        else:
            print(text, file=stream)

    @error_handler
    @timed
    def check_handler(self, args) -> int:
        """Handle the check command"""
        datum = load_datum(args.datum)
        report = check_compatibility(datum)
        self.emit(args, report.to_json(), Messages.compatibility_report(report))
        return Config.EXIT_OK if report.compatible else Config.EXIT_NEGATIVE

    def _emit_classification(self, args, datum: BranchDatum, classification: Classification):
        payload = {"datum": datum.to_json(), "method": "classifier", **classification.to_json()}
        self.emit(args, payload, Messages.classification(datum, classification))

    def _emit_decision(self, args, datum: BranchDatum, decision: Decision):
        payload = {"datum": datum.to_json(), "method": "oracle", **decision.to_json()}
        self.emit(args, payload, Messages.decision(datum, decision))

    @error_handler
    @timed
    def decide_handler(self, args) -> int:
        """Handle the decide command: classifier, oracle, or classifier with oracle fallback"""
        datum = load_datum(args.datum)
        workers = args.workers or Config.WORKERS

        if args.method in ("classifier", "auto"):
            classification = classify(datum)
            if classification.decision is not Verdict.OUTSIDE_SCOPE or args.method == "classifier":
                if args.witness and classification.realizable:
                    decision = decide(datum, budget=args.budget, workers=workers)
                    self._emit_decision(args, datum, decision)
                    return DECISION_EXIT[decision.status]
                self._emit_classification(args, datum, classification)
                return VERDICT_EXIT[classification.decision]
            logger.info(f"{datum} is outside the classified families, falling back to the oracle")

        decision = decide(datum, budget=args.budget, workers=workers)
        self._emit_decision(args, datum, decision)
        return DECISION_EXIT[decision.status]

    @error_handler
    @timed
    def classify_handler(self, args) -> int:
        """Handle the classify command"""
        datum = load_datum(args.datum)
        classification = classify(datum)
        self._emit_classification(args, datum, classification)
        return VERDICT_EXIT[classification.decision]

    @error_handler
    @timed
    def sweep_handler(self, args) -> int:
        """Handle the sweep command"""
        if args.dmax < 2:
            raise UsageError(f"--dmax must be at least 2, got {args.dmax}")
        if args.genus_max < 0:
            raise UsageError(f"--genus-max must be non-negative, got {args.genus_max}")
        report = run_sweep(
            args.family, args.dmax, args.genus_max,
            workers=args.workers or Config.WORKERS, budget=args.budget,
        )
        path = ReportStore(args.report_dir).save_sweep(report)
        payload = report.to_json(timings=args.timings)
        payload["path"] = path
        self.emit(args, payload, Messages.sweep_table(report, path, timings=args.timings))
        return report.exit_code

    @error_handler
    @timed
    def enumerate_handler(self, args) -> int:
        """Handle the enumerate command"""
        if args.kind == "graphs":
            return self._enumerate_graphs(args)
        return self._enumerate_dessins(args)

    def _enumerate_graphs(self, args) -> int:
        if args.genus is None:
            raise UsageError("--kind graphs needs --genus")
        if args.datum is not None or args.dot:
            raise UsageError("--datum and --dot apply to --kind dessins only")
        if args.brute_force and args.coarse:
            raise UsageError("--brute-force quotients by rotation only, --coarse is not supported")
        if args.brute_force:
            graphs = enumerate_minimal_graphs_bruteforce(args.genus)
        else:
            graphs = enumerate_minimal_graphs(args.genus, coarse=args.coarse)

        if args.count_only:
            self.emit(args, {"kind": "graphs", "genus": args.genus, "count": len(graphs)}, str(len(graphs)))
            return Config.EXIT_OK

        records = []
        for graph in graphs:
            record = graph.to_json()
            if args.surface:
                record["surface"] = build_surface_data(graph).to_json()
            records.append(record)
        text = Messages.graph_table(graphs)
        if args.surface:
            text += "\n" + "\n".join(Messages.surface_data(g) for g in graphs)
        self.emit(args, {"kind": "graphs", "genus": args.genus, "graphs": records}, text)
        return Config.EXIT_OK

    def _enumerate_dessins(self, args) -> int:
        if args.datum is None:
            raise UsageError("--kind dessins needs --datum")
        if args.genus is not None or args.coarse or args.brute_force or args.surface:
            raise UsageError("--genus, --coarse, --brute-force and --surface apply to --kind graphs only")
        datum = load_datum(args.datum)
        workers = args.workers or Config.WORKERS

        if args.count_only:
            count = count_dessins(datum, workers=workers)
            self.emit(args, {"kind": "dessins", "datum": datum.to_json(), "count": count}, str(count))
            return Config.EXIT_OK

        dessins = list(enumerate_dessins(datum, workers=workers))
        if args.dot:
            text = "\n".join(d.to_dot(f"dessin_{i}") for i, d in enumerate(dessins))
        else:
            text = Messages.dessin_list(dessins)
        payload = {
            "kind": "dessins",
            "datum": datum.to_json(),
            "dessins": [d.to_json() for d in dessins],
        }
        if args.dot:
            payload["dot"] = [d.to_dot(f"dessin_{i}") for i, d in enumerate(dessins)]
        self.emit(args, payload, text)
        return Config.EXIT_OK

    @error_handler
    @timed
    def construct_handler(self, args) -> int:
        """Handle the construct command"""
        datum = load_datum(args.datum)
        construction = build_sphere_odd(datum)
        payload = {"datum": datum.to_json(), **construction.to_json()}
        self.emit(args, payload, Messages.construction(construction))
        return Config.EXIT_OK

    @error_handler
    @timed
    def verify_witness_handler(self, args) -> int:
        """Handle the verify-witness command"""
        datum = load_datum(args.datum)
        raw = read_json(args.witness)
        if isinstance(raw, dict) and isinstance(raw.get("witness"), dict):
            raw = raw["witness"]
        if not isinstance(raw, dict):
            raise UsageError("a witness must be a JSON object with 'degree' and 'perms'")
        witness = Constellation.from_json(raw)
        ok = verify(witness, datum)
        self.emit(args, {"datum": datum.to_json(), "valid": ok}, Messages.witness_check(datum, ok))
        return Config.EXIT_OK if ok else Config.EXIT_NEGATIVE


def setup_handlers(subparsers) -> CommandHandlers:
    """Register every subcommand on an argparse subparsers action"""
    handlers = CommandHandlers()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print results as JSON")

    datum_help = "branch datum as JSON text, a file path, or - for stdin"

    check = subparsers.add_parser("check", parents=[common], help="check the compatibility conditions")
    check.add_argument("datum", help=datum_help)
    check.set_defaults(handler=handlers.check_handler)

    decide_parser = subparsers.add_parser("decide", parents=[common], help="decide realizability")
    decide_parser.add_argument("datum", help=datum_help)
    decide_parser.add_argument("--method", choices=("oracle", "classifier", "auto"), default="auto")
    decide_parser.add_argument("--budget", type=int, default=None, help="oracle node budget")
    decide_parser.add_argument("--workers", type=int, default=None)
    decide_parser.add_argument("--witness", action="store_true",
                               help="search a witness when the classifier answers realizable")
    decide_parser.set_defaults(handler=handlers.decide_handler)

    classify_parser = subparsers.add_parser("classify", parents=[common], help="apply the classification rules")
    classify_parser.add_argument("datum", help=datum_help)
    classify_parser.set_defaults(handler=handlers.classify_handler)

    sweep = subparsers.add_parser("sweep", parents=[common], help="compare classifier and oracle over a family")
    sweep.add_argument("--dmax", type=int, default=Config.SWEEP_DMAX)
    sweep.add_argument("--family", choices=FAMILIES, default="d-2-2")
    sweep.add_argument("--genus-max", type=int, default=Config.SWEEP_GENUS_MAX)
    sweep.add_argument("--budget", type=int, default=None)
    sweep.add_argument("--workers", type=int, default=None)
    sweep.add_argument("--report-dir", default=Config.REPORT_DIR)
    sweep.add_argument("--timings", action="store_true", help="show per-datum wall time (never saved)")
    sweep.set_defaults(handler=handlers.sweep_handler)

    enumerate_parser = subparsers.add_parser("enumerate", parents=[common], help="list dessins or minimal graphs")
    enumerate_parser.add_argument("--kind", choices=("dessins", "graphs"), required=True)
    enumerate_parser.add_argument("--datum", default=None, help=datum_help)
    enumerate_parser.add_argument("--genus", type=int, default=None)
    enumerate_parser.add_argument("--coarse", action="store_true", help="also identify color-swapped graphs")
    enumerate_parser.add_argument("--brute-force", action="store_true", help="unpruned double-loop enumeration")
    enumerate_parser.add_argument("--surface", action="store_true", help="include the cell structure of each graph")
    enumerate_parser.add_argument("--count-only", action="store_true")
    enumerate_parser.add_argument("--dot", action="store_true", help="DOT output for dessins")
    enumerate_parser.add_argument("--workers", type=int, default=None)
    enumerate_parser.set_defaults(handler=handlers.enumerate_handler)

    construct = subparsers.add_parser("construct", parents=[common], help="build a diagram for an odd sphere datum")
    construct.add_argument("datum", help=datum_help)
    construct.set_defaults(handler=handlers.construct_handler)

    verify_parser = subparsers.add_parser("verify-witness", parents=[common], help="check a constellation")
    verify_parser.add_argument("datum", help=datum_help)
    verify_parser.add_argument("witness", help="constellation JSON text, a file path, or - for stdin")
    verify_parser.set_defaults(handler=handlers.verify_witness_handler)

    logger.debug("Handlers setup completed")
    return handlers
