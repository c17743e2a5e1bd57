"""
Branch data and the five compatibility conditions
"""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.utilities.iterables import partitions as sympy_partitions

logger = logging.getLogger(__name__)


class BranchDataError(ValueError):
    """Malformed partition, surface or datum"""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class DegreeMismatchError(BranchDataError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """Non-increasing positive parts; the constructor sorts"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts:
            raise BranchDataError("a partition needs at least one part")
        if parts[-1] < 1:
            raise BranchDataError(f"partition {list(self.parts)} has a non-positive part")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, raw: Sequence[Any], index: Optional[int] = None,
              degree: Optional[int] = None) -> "Partition":
        """Strict parser: the parts must already be non-increasing and sum to degree"""
        where = f"partition {index}" if index is not None else "partition"
        if not isinstance(raw, (list, tuple)) or not raw:
            raise BranchDataError(f"{where}: expected a non-empty list of integers", index)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
            raise BranchDataError(f"{where}: parts must be integers, got {raw!r}", index)
        if any(x < 1 for x in raw):
            raise BranchDataError(f"{where}: parts must be positive, got {list(raw)}", index)
        if any(a < b for a, b in zip(raw, raw[1:])):
            raise BranchDataError(f"{where}: parts must be non-increasing, got {list(raw)}", index)
        if degree is not None and sum(raw) != degree:
            raise BranchDataError(
                f"{where}: parts {list(raw)} sum to {sum(raw)}, expected degree {degree}", index
            )
        return cls(tuple(raw))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_full_cycle(self) -> bool:
        return self.length == 1

    def count(self, part: int) -> int:
        return self.parts.count(part)

    def refines(self, other: "Partition") -> bool:
        return refines(self, other)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, item):
        return self.parts[item]

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.parts) + ")"


@dataclass(frozen=True)
class SurfaceClass:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise BranchDataError(f"genus must be non-negative, got {self.genus}")
        if not self.orientable and self.genus < 1:
            raise BranchDataError("a non-orientable surface has genus at least 1")

    @classmethod
    def sphere(cls) -> "SurfaceClass":
        return cls(True, 0)

    @classmethod
    def torus(cls) -> "SurfaceClass":
        return cls(True, 1)

    @classmethod
    def orientable_genus(cls, genus: int) -> "SurfaceClass":
        return cls(True, genus)

    @classmethod
    def projective_plane(cls) -> "SurfaceClass":
        return cls(False, 1)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.genus == 0

    def to_json(self) -> Dict[str, Any]:
        return {"orientable": self.orientable, "genus": self.genus}

    @classmethod
    def from_json(cls, raw: Dict[str, Any], where: str = "surface") -> "SurfaceClass":
        if not isinstance(raw, dict):
            raise BranchDataError(f"{where}: expected an object with 'orientable' and 'genus'")
        orientable = raw.get("orientable", True)
        genus = raw.get("genus")
        if not isinstance(orientable, bool) or not isinstance(genus, int) or isinstance(genus, bool):
            raise BranchDataError(f"{where}: 'orientable' must be a boolean and 'genus' an integer")
        return cls(orientable, genus)

    def __str__(self):
        if self.orientable:
            return {0: "S", 1: "T"}.get(self.genus, f"{self.genus}T")
        return "P" if self.genus == 1 else f"{self.genus}P"


@dataclass(frozen=True)
class BranchDatum:
    cover: SurfaceClass
    base: SurfaceClass
    degree: int
    partitions: Tuple[Partition, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "partitions", tuple(self.partitions))
        if self.degree < 2:
            raise BranchDataError(f"degree must be at least 2, got {self.degree}")
        for index, partition in enumerate(self.partitions):
            if partition.degree != self.degree:
                raise BranchDataError(
                    f"partition {index} {partition} has degree {partition.degree}, "
                    f"expected {self.degree}",
                    index,
                )

    @classmethod
    def sphere_cover(cls, cover_genus: int, degree: int, *parts: Sequence[int]) -> "BranchDatum":
        """Shorthand for an orientable cover of the sphere"""
        return cls(
            SurfaceClass.orientable_genus(cover_genus),
            SurfaceClass.sphere(),
            degree,
            tuple(Partition(tuple(p)) for p in parts),
        )

    @property
    def n(self) -> int:
        return len(self.partitions)

    @property
    def d(self) -> int:
        return self.degree

    @property
    def n_tilde(self) -> int:
        return sum(p.length for p in self.partitions)

    def with_partitions(self, partitions: Sequence[Partition]) -> "BranchDatum":
        return BranchDatum(self.cover, self.base, self.degree, tuple(partitions))

    def reordered(self, order: Sequence[int]) -> "BranchDatum":
        return self.with_partitions([self.partitions[i] for i in order])

    def canonical(self) -> "BranchDatum":
        """Same datum with the partitions sorted, largest first"""
        return self.with_partitions(sorted(self.partitions, reverse=True))

    def to_json(self) -> Dict[str, Any]:
        return {
            "cover": self.cover.to_json(),
            "base": self.base.to_json(),
            "degree": self.degree,
            "partitions": [list(p.parts) for p in self.partitions],
        }

    @classmethod
    def from_json(cls, raw: Union[str, Dict[str, Any]]) -> "BranchDatum":
        if isinstance(raw, str):
            try:
                raw = json.loads(raw)
            except json.JSONDecodeError as e:
                raise BranchDataError(f"invalid JSON: {e}") from e
        if not isinstance(raw, dict):
            raise BranchDataError("a branch datum must be a JSON object")
        degree = raw.get("degree", raw.get("d"))
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise BranchDataError("'degree' must be an integer")
        raw_partitions = raw.get("partitions", [])
        if not isinstance(raw_partitions, list):
            raise BranchDataError("'partitions' must be a list")
        if "n" in raw and raw["n"] != len(raw_partitions):
            raise BranchDataError(f"'n' is {raw['n']} but {len(raw_partitions)} partitions are given")
        partitions = tuple(
            Partition.parse(p, index=i, degree=degree) for i, p in enumerate(raw_partitions)
        )
        return cls(
            SurfaceClass.from_json(raw.get("cover", {"orientable": True, "genus": 0}), "cover"),
            SurfaceClass.from_json(raw.get("base", {"orientable": True, "genus": 0}), "base"),
            degree,
            partitions,
        )

    def __str__(self):
        parts = ",".join(str(p) for p in self.partitions)
        return f"({self.cover},{self.base},{self.n},{self.degree}{',' if parts else ''}{parts})"


@dataclass(frozen=True)
class ConditionResult:
    number: int
    passed: bool
    detail: str


@dataclass(frozen=True)
class CompatibilityReport:
    datum: BranchDatum
    conditions: Tuple[ConditionResult, ...]

    @property
    def compatible(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def failed(self) -> List[int]:
        return [c.number for c in self.conditions if not c.passed]

    def to_json(self) -> Dict[str, Any]:
        return {
            "datum": self.datum.to_json(),
            "compatible": self.compatible,
            "conditions": [
                {"condition": c.number, "passed": c.passed, "detail": c.detail}
                for c in self.conditions
            ],
        }


def refines(p: Partition, q: Partition) -> bool:
    """True iff the parts of p split into groups summing to the parts of q"""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"cannot compare {p} (degree {p.degree}) with {q} (degree {q.degree})")
    bins = list(q.parts)
    items = p.parts

    def place(k: int) -> bool:
        if k == len(items):
            return True
        tried = set()
        for b, room in enumerate(bins):
            if room < items[k] or room in tried:
                continue
            tried.add(room)
            bins[b] -= items[k]
            if place(k + 1):
                return True
            bins[b] += items[k]
        return False

    return place(0)


def check_compatibility(datum: BranchDatum) -> CompatibilityReport:
    d, n, n_tilde = datum.degree, datum.n, datum.n_tilde
    cover, base = datum.cover, datum.base

    lhs = cover.euler_characteristic - n_tilde
    rhs = d * (base.euler_characteristic - n)
    results = [
        ConditionResult(1, lhs == rhs, f"chi(cover) - n~ = {lhs}, d*(chi(base) - n) = {rhs}"),
        ConditionResult(2, (n * d - n_tilde) % 2 == 0, f"n*d - n~ = {n * d - n_tilde}"),
        ConditionResult(
            3,
            not base.orientable or cover.orientable,
            "orientable base requires orientable cover",
        ),
        ConditionResult(
            4,
            base.orientable or d % 2 == 0 or not cover.orientable,
            "non-orientable base and odd degree require non-orientable cover",
        ),
    ]

    if not base.orientable and cover.orientable:
        if d % 2:
            fifth = ConditionResult(5, False, f"degree {d} is odd, no partition ({d}/2,{d}/2)")
        else:
            half = Partition.of(d // 2, d // 2)
            bad = [i for i, p in enumerate(datum.partitions) if not refines(p, half)]
            fifth = ConditionResult(
                5, not bad, f"partitions {bad} do not refine {half}" if bad else f"all refine {half}"
            )
    else:
        fifth = ConditionResult(5, True, "not applicable")
    results.append(fifth)
    return CompatibilityReport(datum, tuple(results))


def all_partitions(d: int) -> List[Partition]:
    """Every partition of d, largest first in lexicographic order"""
    result = [
        Partition(tuple(k for k, m in sorted(p.items(), reverse=True) for _ in range(m)))
        for p in sympy_partitions(d)
    ]
    return sorted(result, reverse=True)


def enumerate_compatible(base: SurfaceClass, cover: SurfaceClass, n: int, d: int,
                         first_partition_filter: Optional[Partition] = None) -> Iterator[BranchDatum]:
    """Every compatible datum with the given frame, each multiset of partitions once.

    Without a filter the partitions come sorted largest first; with one, slot 1
    holds the filter and slots 2..n are sorted largest first.
    """
    if d < 2:
        raise BranchDataError(f"degree must be at least 2, got {d}")
    if first_partition_filter is not None and first_partition_filter.degree != d:
        raise DegreeMismatchError(f"filter {first_partition_filter} is not a partition of {d}")

    target = cover.euler_characteristic - d * (base.euler_characteristic - n)
    if target < n or target > n * d:
        logger.debug(f"No compatible data: n~ = {target} outside [{n}, {n * d}]")
        return

    candidates = all_partitions(d)
    fixed: Tuple[Partition, ...] = ()
    free = n
    if first_partition_filter is not None:
        if n < 1:
            return
        fixed = (first_partition_filter,)
        free = n - 1
    remaining = target - sum(p.length for p in fixed)

    for combo in combinations_with_replacement(candidates, free):
        if sum(p.length for p in combo) != remaining:
            continue
        datum = BranchDatum(cover, base, d, fixed + combo)
        if check_compatibility(datum).compatible:
            yield datum
