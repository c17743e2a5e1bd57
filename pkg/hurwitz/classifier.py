"""
Closed-form realizability decisions for the classified families

Rules, each matched up to the order of the partitions:
  - a full cycle (d) makes every compatible datum realizable;
  - sphere data with a (d-1, 1) entry fail only for (3,1),(2,2),...,(2,2) at
    d = 4 and for (2k-1,1),(2,...,2),(2,...,2);
  - three-point data with a (d-2, 2) entry fail on the sphere only for
    (2k-2,2),(2^k),(2^k) with k > 2 and (2k-2,2),(2^k),(k+1,1^(k-1)); on the
    torus only for (4,2),(3,3),(3,3); never in higher genus.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .branch_data import (
    BranchDatum, Partition, SurfaceClass, all_partitions, check_compatibility, refines,
)

logger = logging.getLogger(__name__)


class IncompatibleDatumError(ValueError):
    def __init__(self, datum: BranchDatum, failed: Sequence[int]):
        names = ", ".join(str(c) for c in failed)
        super().__init__(f"{datum} is not compatible: condition {names} fails")
        self.datum = datum
        self.failed = list(failed)


class Verdict(enum.Enum):
    REALIZABLE = "realizable"
    EXCEPTIONAL = "exceptional"
    OUTSIDE_SCOPE = "outside_scope"


class Rule(enum.Enum):
    FULL_CYCLE = "thm_1_4"
    NEAR_FULL_CYCLE = "prop_1_5"
    SPHERE_D_MINUS_2 = "thm_1_1"
    TORUS_D_MINUS_2 = "thm_1_2"
    HIGH_GENUS_D_MINUS_2 = "thm_1_3"


@dataclass(frozen=True)
class Classification:
    decision: Verdict
    rule: Optional[Rule] = None
    family: Optional[int] = None

    @property
    def realizable(self) -> bool:
        return self.decision is Verdict.REALIZABLE

    @property
    def exceptional(self) -> bool:
        return self.decision is Verdict.EXCEPTIONAL

    def to_json(self) -> Dict[str, Any]:
        return {
            "decision": self.decision.value,
            "rule": self.rule.value if self.rule else None,
            "family": self.family,
        }

    def __str__(self):
        if self.rule is None:
            return self.decision.value
        family = f" family {self.family}" if self.family else ""
        return f"{self.decision.value} ({self.rule.value}{family})"


OUTSIDE_SCOPE = Classification(Verdict.OUTSIDE_SCOPE)


def _all_twos(p: Partition, k: int) -> bool:
    return p.parts == (2,) * k


def _hook(p: Partition, k: int) -> bool:
    """(k+1, 1, ..., 1) with k parts"""
    return p.parts == (k + 1,) + (1,) * (k - 1)


def _near_full_cycle(datum: BranchDatum) -> Optional[Classification]:
    d = datum.degree
    if d < 3 or not datum.cover.is_sphere:
        return None
    special = Partition.of(d - 1, 1)
    slots = [i for i, p in enumerate(datum.partitions) if p == special]
    if not slots:
        return None
    for slot in slots:
        others = [p for i, p in enumerate(datum.partitions) if i != slot]
        if d == 4 and datum.n >= 2 and all(p.parts == (2, 2) for p in others):
            return Classification(Verdict.EXCEPTIONAL, Rule.NEAR_FULL_CYCLE, 1)
        if datum.n == 3 and d % 2 == 0 and all(_all_twos(p, d // 2) for p in others):
            return Classification(Verdict.EXCEPTIONAL, Rule.NEAR_FULL_CYCLE, 2)
    return Classification(Verdict.REALIZABLE, Rule.NEAR_FULL_CYCLE)


def _d_minus_2(datum: BranchDatum) -> Optional[Classification]:
    d = datum.degree
    if datum.n != 3 or d < 4:
        return None
    special = Partition.of(d - 2, 2)
    slots = [i for i, p in enumerate(datum.partitions) if p == special]
    if not slots:
        return None
    genus = datum.cover.genus

    if genus >= 2:
        return Classification(Verdict.REALIZABLE, Rule.HIGH_GENUS_D_MINUS_2)

    for slot in slots:
        a, b = sorted(p for i, p in enumerate(datum.partitions) if i != slot)
        if genus == 1:
            if d == 6 and a.parts == (3, 3) and b.parts == (3, 3):
                return Classification(Verdict.EXCEPTIONAL, Rule.TORUS_D_MINUS_2)
            continue
        if d % 2:
            continue
        k = d // 2
        if k > 2 and _all_twos(a, k) and _all_twos(b, k):
            return Classification(Verdict.EXCEPTIONAL, Rule.SPHERE_D_MINUS_2, 1)
        if (_all_twos(a, k) and _hook(b, k)) or (_all_twos(b, k) and _hook(a, k)):
            return Classification(Verdict.EXCEPTIONAL, Rule.SPHERE_D_MINUS_2, 2)

    rule = Rule.TORUS_D_MINUS_2 if genus == 1 else Rule.SPHERE_D_MINUS_2
    return Classification(Verdict.REALIZABLE, rule)


def classify(datum: BranchDatum) -> Classification:
    """Decision by the first applicable rule.

    A full cycle anywhere decides first. Between the (d-1,1) and (d-2,2)
    rules the one whose special partition sits in slot 1 is reported; the
    two never disagree on the decision.
    """
    if not datum.base.is_sphere or not datum.cover.orientable:
        return OUTSIDE_SCOPE
    report = check_compatibility(datum)
    if not report.compatible:
        raise IncompatibleDatumError(datum, report.failed)

    d = datum.degree
    if any(p.is_full_cycle() for p in datum.partitions):
        return Classification(Verdict.REALIZABLE, Rule.FULL_CYCLE)

    near = _near_full_cycle(datum)
    minus_two = _d_minus_2(datum)
    if minus_two and datum.partitions and datum.partitions[0] == Partition.of(d - 2, 2):
        result = minus_two
    else:
        result = near or minus_two or OUTSIDE_SCOPE
    logger.debug(f"{datum}: {result}")
    return result


def non_refining_partitions(k: int) -> List[Partition]:
    """Partitions of 2k with at least k parts that do not refine (k, k)"""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    result = [Partition((k + 1,) + (1,) * (k - 1))]
    if k % 2:
        twos = Partition((2,) * k)
        if twos not in result:
            result.append(twos)
    return sorted(result, reverse=True)


def brute_force_non_refining_partitions(k: int) -> List[Partition]:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    half = Partition.of(k, k)
    return [p for p in all_partitions(2 * k) if p.length >= k and not refines(p, half)]


def _split_half(parts: Tuple[int, ...], target: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    chosen: List[int] = []

    def pick(start: int, room: int) -> bool:
        if room == 0:
            return True
        tried = set()
        for i in range(start, len(parts)):
            if parts[i] > room or parts[i] in tried:
                continue
            tried.add(parts[i])
            chosen.append(i)
            if pick(i + 1, room - parts[i]):
                return True
            chosen.pop()
        return False

    if not pick(0, target):
        return None
    left = tuple(parts[i] for i in chosen)
    right = tuple(x for i, x in enumerate(parts) if i not in chosen)
    return left, right


def half_datum(datum: BranchDatum) -> Optional[BranchDatum]:
    """Four-point datum of degree k whose realization, composed with the
    degree-2 cover (S, S, 3, 2, (2), (2), (1, 1)), realizes the even sphere
    datum (S, S, 3, 2k, (2k-2, 2), p2, p3).

    Returns None unless every entry of p2 is even and p3 splits into two
    halves summing to k.
    """
    d = datum.degree
    if datum.n != 3 or d % 2 or d < 4 or not datum.cover.is_sphere or not datum.base.is_sphere:
        return None
    if datum.partitions[0] != Partition.of(d - 2, 2):
        return None
    k = d // 2
    second, third = datum.partitions[1], datum.partitions[2]
    if any(x % 2 for x in second):
        return None
    halves = _split_half(third.parts, k)
    if halves is None:
        return None
    left, right = halves
    return BranchDatum(
        SurfaceClass.sphere(),
        SurfaceClass.sphere(),
        k,
        (
            Partition.of(k - 1, 1),
            Partition(tuple(x // 2 for x in second)),
            Partition(left),
            Partition(right),
        ),
    )
