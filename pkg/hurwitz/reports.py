"""
Sweep reports: classifier against oracle over whole families of data
"""

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

from .branch_data import BranchDatum, Partition, SurfaceClass, enumerate_compatible
from .classifier import Verdict, classify
from .config import Config
from .oracle import BudgetExceededError, decide

logger = logging.getLogger(__name__)

FAMILIES = ("d-2-2", "d-1-1", "all")


@dataclass(frozen=True)
class SweepRow:
    datum: BranchDatum
    classifier: str
    rule: Optional[str]
    oracle: str
    seconds: float = 0.0

    @property
    def undecided(self) -> bool:
        return self.oracle == "undecided"

    @property
    def agrees(self) -> Optional[bool]:
        """None when either side gives no verdict"""
        if self.undecided or self.classifier == Verdict.OUTSIDE_SCOPE.value:
            return None
        return (self.classifier == Verdict.REALIZABLE.value) == (self.oracle == "realizable")

    @property
    def sort_key(self):
        return (self.datum.cover.genus, self.datum.degree, [p.parts for p in self.datum.partitions])

    def to_json(self, timings: bool = False) -> Dict[str, Any]:
        data = {
            "datum": self.datum.to_json(),
            "label": str(self.datum),
            "classifier": self.classifier,
            "rule": self.rule,
            "oracle": self.oracle,
            "agrees": self.agrees,
        }
        if timings:
            data["seconds"] = round(self.seconds, 6)
        return data


@dataclass
class SweepReport:
    family: str
    dmax: int
    genus_max: int
    rows: List[SweepRow] = field(default_factory=list)

    @property
    def disagreements(self) -> List[SweepRow]:
        return [r for r in self.rows if r.agrees is False]

    @property
    def undecided(self) -> List[SweepRow]:
        return [r for r in self.rows if r.undecided]

    def exceptional(self) -> List[SweepRow]:
        return [r for r in self.rows if r.classifier == Verdict.EXCEPTIONAL.value]

    def exceptional_by_degree(self) -> Dict[str, int]:
        """Exceptional counts keyed 'g<genus>/d<degree>', every swept degree present"""
        counts: Dict[str, int] = {}
        for row in self.rows:
            key = f"g{row.datum.cover.genus}/d{row.datum.degree}"
            counts.setdefault(key, 0)
            if row.classifier == Verdict.EXCEPTIONAL.value:
                counts[key] += 1
        return counts

    @property
    def exit_code(self) -> int:
        if self.disagreements:
            return Config.EXIT_NEGATIVE
        if self.undecided:
            return Config.EXIT_UNDECIDED
        return Config.EXIT_OK

    def to_json(self, timings: bool = False) -> Dict[str, Any]:
        """Wall times are left out unless asked for, so equal sweeps serialize equally"""
        return {
            "family": self.family,
            "dmax": self.dmax,
            "genus_max": self.genus_max,
            "rows": [r.to_json(timings) for r in self.rows],
            "summary": {
                "data": len(self.rows),
                "disagreements": len(self.disagreements),
                "undecided": len(self.undecided),
                "exceptional_by_degree": self.exceptional_by_degree(),
            },
        }


def sweep_data(family: str, dmax: int, genus_max: int) -> Iterator[BranchDatum]:
    """Compatible three-point data with a (d-2,2) or (d-1,1) entry in slot 1"""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}, expected one of {FAMILIES}")
    sphere = SurfaceClass.sphere()
    if family in ("d-2-2", "all"):
        for genus in range(genus_max + 1):
            cover = SurfaceClass.orientable_genus(genus)
            for d in range(4, dmax + 1):
                yield from enumerate_compatible(sphere, cover, 3, d, Partition.of(d - 2, 2))
    if family in ("d-1-1", "all"):
        for d in range(3, dmax + 1):
            yield from enumerate_compatible(sphere, sphere, 3, d, Partition.of(d - 1, 1))


def sweep_row(datum: BranchDatum, budget: Optional[int] = None) -> SweepRow:
    started = time.perf_counter()
    classification = classify(datum)
    try:
        decision = decide(datum, budget=budget)
        oracle = decision.status.value
    except BudgetExceededError as e:
        logger.warning(f"Budget exhausted on {datum}: {e}")
        oracle = "undecided"
    row = SweepRow(
        datum,
        classification.decision.value,
        classification.rule.value if classification.rule else None,
        oracle,
        time.perf_counter() - started,
    )
    if row.agrees is False:
        logger.error(f"Disagreement on {datum}: classifier {row.classifier}, oracle {row.oracle}")
    return row


def _row_job(args) -> SweepRow:
    datum, budget = args
    return sweep_row(datum, budget)


def run_sweep(family: str, dmax: int, genus_max: int, workers: int = 1,
              budget: Optional[int] = None) -> SweepReport:
    data = list(sweep_data(family, dmax, genus_max))
    logger.info(f"Sweeping {len(data)} data ({family}, d <= {dmax}, genus <= {genus_max})")
    jobs = [(datum, budget) for datum in data]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(job) for job in jobs]
    # the (d-1,1) and (d-2,2) families overlap at d = 4
    unique = {str(r.datum): r for r in rows}
    report = SweepReport(family, dmax, genus_max, sorted(unique.values(), key=lambda r: r.sort_key))
    logger.info(
        f"Sweep done: {len(report.rows)} rows, {len(report.exceptional())} exceptional, "
        f"{len(report.disagreements)} disagreements, {len(report.undecided)} undecided"
    )
    return report


class ReportStore:
    def __init__(self, directory: Optional[str] = None):
        self.directory = directory or Config.REPORT_DIR

    def init_store(self) -> bool:
        """Create the report directory"""
        try:
            os.makedirs(self.directory, exist_ok=True)
            return True
        except OSError as e:
            logger.error(f"Failed to create report directory {self.directory}: {e}")
            return False

    def sweep_path(self, report: SweepReport) -> str:
        return os.path.join(self.directory, f"sweep-{report.family}-d{report.dmax}.json")

    def save_sweep(self, report: SweepReport) -> Optional[str]:
        """Write a sweep report, returning its path"""
        if not self.init_store():
            return None
        path = self.sweep_path(report)
        try:
            payload = report.to_json()
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(payload, handle, indent=2)
            logger.info(f"Report written to {path}")
            return path
        except OSError as e:
            logger.error(f"Error writing report {path}: {e}")
            return None

    def load_sweep(self, path: str) -> Optional[Dict[str, Any]]:
        try:
            with open(path, encoding="utf-8") as handle:
                return json.load(handle)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Error reading report {path}: {e}")
            return None

    def list_reports(self) -> List[str]:
        try:
            return sorted(
                os.path.join(self.directory, name)
                for name in os.listdir(self.directory)
                if name.startswith("sweep-") and name.endswith(".json")
            )
        except OSError as e:
            logger.error(f"Error listing reports in {self.directory}: {e}")
            return []

