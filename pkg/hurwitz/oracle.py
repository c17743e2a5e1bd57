"""
Brute-force realizability oracle over the monodromy correspondence

A datum (gT, S, n, d, partitions) is realizable exactly when there are n
permutations of d sheets with the prescribed cycle types, product equal to
the identity and a transitive generated group. The genus of such a
constellation is fixed by Riemann-Hurwitz, so compatibility condition 1
makes it agree with the cover genus; every witness is checked against it.
"""

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from .branch_data import BranchDatum, check_compatibility
from .config import Config
from .permutations import (
    Perm, canonical_representative, class_size, compose, conjugate, cycle_type,
    inverse, is_transitive, iter_class,
)

logger = logging.getLogger(__name__)


class BudgetExceededError(RuntimeError):
    """The node budget ran out before the search finished; nothing was proven"""

    def __init__(self, nodes: int, frontier: Dict[str, Any]):
        super().__init__(f"search budget exhausted after {nodes} candidates at {frontier}")
        self.nodes = nodes
        self.frontier = frontier

    def __reduce__(self):
        return type(self), (self.nodes, self.frontier)


@dataclass(frozen=True)
class Constellation:
    degree: int
    perms: Tuple[Perm, ...]

    def cycle_types(self) -> List[Tuple[int, ...]]:
        return [cycle_type(p) for p in self.perms]

    def genus(self) -> int:
        """Riemann-Hurwitz genus of the cover of the sphere it encodes"""
        chi = self.degree * (2 - len(self.perms)) + sum(len(t) for t in self.cycle_types())
        return (2 - chi) // 2

    def conjugate(self, g: Sequence[int]) -> "Constellation":
        return Constellation(self.degree, tuple(conjugate(p, g) for p in self.perms))

    def to_sympy(self) -> List[Permutation]:
        return [Permutation(list(p), size=self.degree) for p in self.perms]

    def to_json(self) -> Dict[str, Any]:
        return {"degree": self.degree, "perms": [[x + 1 for x in p] for p in self.perms]}

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "Constellation":
        try:
            degree = int(raw["degree"])
            perms = tuple(tuple(int(x) - 1 for x in p) for p in raw["perms"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"malformed constellation JSON: {e!r}") from e
        return cls(degree, perms)


class DecisionStatus(enum.Enum):
    WITNESS = "realizable"
    UNREALIZABLE = "unrealizable"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class Decision:
    status: DecisionStatus
    witness: Optional[Constellation] = None
    reason: str = ""
    nodes: int = 0

    @property
    def realizable(self) -> bool:
        return self.status is DecisionStatus.WITNESS

    def to_json(self) -> Dict[str, Any]:
        return {
            "decision": self.status.value,
            "reason": self.reason,
            "nodes": self.nodes,
            "witness": self.witness.to_json() if self.witness else None,
        }


def verify(witness: Constellation, datum: BranchDatum) -> bool:
    """Independent check of every constellation invariant, done with sympy"""
    d = datum.degree
    if witness.degree != d or len(witness.perms) != datum.n:
        return False
    if any(sorted(p) != list(range(d)) for p in witness.perms):
        return False
    perms = witness.to_sympy()
    total = Permutation(list(range(d)), size=d)
    for p in perms:
        total = total * p
    if not total.is_Identity:
        return False
    for p, partition in zip(perms, datum.partitions):
        observed = tuple(sorted(
            (length for length, count in p.cycle_structure.items() for _ in range(count)),
            reverse=True,
        ))
        if observed != partition.parts:
            return False
    if d > 1 and not PermutationGroup(perms).is_transitive():
        return False
    return True


@dataclass
class _SearchPlan:
    """Order in which the partitions are searched, and how to map witnesses back"""

    degree: int
    types: Tuple[Tuple[int, ...], ...]
    order: Tuple[int, ...]
    fixed: Perm = field(init=False)

    def __post_init__(self):
        self.fixed = canonical_representative(self.types[self.order[0]])

    @classmethod
    def for_datum(cls, datum: BranchDatum) -> "_SearchPlan":
        types = tuple(p.parts for p in datum.partitions)
        order = tuple(range(datum.n))
        if datum.n == 3:
            # derive the largest class, enumerate the smallest
            by_size = sorted(range(3), key=lambda i: (class_size(types[i]), i))
            order = (by_size[1], by_size[0], by_size[2])
        return cls(datum.degree, types, order)

    def searched_types(self) -> List[Tuple[int, ...]]:
        return [self.types[i] for i in self.order]

    def restore(self, perms: Sequence[Perm]) -> Tuple[Perm, ...]:
        """Map a witness in search order back to datum order"""
        if len(perms) != 3:
            return tuple(perms)
        triple = list(perms)
        order = list(self.order)
        for _ in range(2):
            for _ in range(3):
                if order == [0, 1, 2]:
                    return tuple(triple)
                triple = triple[1:] + triple[:1]
                order = order[1:] + order[:1]
            x, y, z = triple
            triple = [y, compose(compose(inverse(y), x), y), z]
            order = [order[1], order[0], order[2]]
        raise AssertionError(f"cannot restore order {self.order}")


def _iter_witnesses(plan: _SearchPlan, first_image: Optional[int], budget: int,
                    counter: List[int]) -> Iterator[Tuple[Perm, ...]]:
    """Witnesses in search order, sigma_1 fixed, sigma_2 limited to one shard"""
    d = plan.degree
    types = plan.searched_types()
    n = len(types)

    def spend(candidate: Perm, k: int):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceededError(counter[0] - 1, {
                "shard": first_image, "slot": k, "candidate": list(candidate),
            })

    def extend(chosen: List[Perm], running: Perm) -> Iterator[Tuple[Perm, ...]]:
        k = len(chosen)
        if k == n - 1:
            closing = inverse(running)
            if cycle_type(closing) == types[-1] and is_transitive(chosen, d):
                yield tuple(chosen) + (closing,)
            return
        shard = first_image if k == 1 else None
        for candidate in iter_class(types[k], shard):
            spend(candidate, k)
            chosen.append(candidate)
            yield from extend(chosen, compose(running, candidate))
            chosen.pop()

    if n == 0:
        return
    if n == 1:
        if plan.fixed == tuple(range(d)) and is_transitive([plan.fixed], d):
            yield (plan.fixed,)
        return
    yield from extend([plan.fixed], plan.fixed)


def _shards(plan: _SearchPlan) -> List[Optional[int]]:
    return list(range(plan.degree)) if len(plan.types) > 2 else [None]


def _first_in_shard(args) -> Tuple[Optional[Tuple[Perm, ...]], int]:
    plan, shard, budget = args
    counter = [0]
    for witness in _iter_witnesses(plan, shard, budget, counter):
        return witness, counter[0]
    return None, counter[0]


def _shard_job(args) -> Tuple[Optional[Tuple[Perm, ...]], int]:
    """Worker side of _first_in_shard; an exhausted shard reports budget + 1 nodes"""
    try:
        return _first_in_shard(args)
    except BudgetExceededError as e:
        return None, e.nodes + 1


def _search_parallel(plan: _SearchPlan, shards: List[Optional[int]], budget: int,
                     workers: int) -> Tuple[Optional[Tuple[Perm, ...]], int]:
    """Shards run concurrently with the whole budget and are merged in shard order.

    A shard whose count does not fit what the earlier shards left is searched
    again in-process with the remainder, so witness, node count and budget
    exhaustion are those of the serial search.
    """
    nodes = 0
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        futures = [pool.submit(_shard_job, (plan, s, budget)) for s in shards]
        for shard, future in zip(shards, futures):
            witness, spent = future.result()
            if spent > budget - nodes:
                witness, spent = _first_in_shard((plan, shard, budget - nodes))
            nodes += spent
            if witness is not None:
                return witness, nodes
        return None, nodes
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _unsupported(datum: BranchDatum) -> Optional[str]:
    if not datum.base.is_sphere:
        return "only the sphere is supported as base"
    if not datum.cover.orientable:
        return "non-orientable covers are not searched"
    return None


def decide(datum: BranchDatum, budget: Optional[int] = None, workers: int = 1) -> Decision:
    """Exhaustive search for a constellation realizing the datum"""
    reason = _unsupported(datum)
    if reason:
        return Decision(DecisionStatus.UNSUPPORTED, reason=reason)
    report = check_compatibility(datum)
    if not report.compatible:
        return Decision(DecisionStatus.UNREALIZABLE, reason=f"incompatible: conditions {report.failed} fail")

    budget = Config.ORACLE_BUDGET if budget is None else budget
    plan = _SearchPlan.for_datum(datum)
    shards = _shards(plan)
    logger.debug(f"Deciding {datum} over {len(shards)} shard(s), order {plan.order}")

    found = None
    nodes = 0
    if workers > 1 and len(shards) > 1:
        found, nodes = _search_parallel(plan, shards, budget, workers)
    else:
        for shard in shards:
            witness, spent = _first_in_shard((plan, shard, budget - nodes))
            nodes += spent
            if witness is not None:
                found = witness
                break

    if found is None:
        return Decision(DecisionStatus.UNREALIZABLE, reason="exhaustive search found no witness", nodes=nodes)

    constellation = Constellation(datum.degree, plan.restore(found))
    assert constellation.genus() == datum.cover.genus, "Riemann-Hurwitz genus mismatch"
    assert verify(constellation, datum), f"witness for {datum} fails verification"
    return Decision(DecisionStatus.WITNESS, constellation, reason="witness found", nodes=nodes)


def canonical_form(perms: Sequence[Perm], d: int) -> Tuple[Tuple[Perm, ...], int]:
    """Least relabeling of a transitive tuple, and the size of its centralizer.

    Relabeling points in breadth-first order from each start point gives one
    candidate per start; conjugate tuples share the candidate set, and the
    starts reaching the least candidate form one orbit of the centralizer.
    """
    best = None
    hits = 0
    for start in range(d):
        label = [-1] * d
        label[start] = 0
        queue = [start]
        for x in queue:
            for p in perms:
                y = p[x]
                if label[y] < 0:
                    label[y] = len(queue)
                    queue.append(y)
        form = tuple(tuple(label[p[queue[i]]] for i in range(d)) for p in perms)
        if best is None or form < best:
            best, hits = form, 1
        elif form == best:
            hits += 1
    return best, hits


def iter_witnesses(datum: BranchDatum, budget: Optional[int] = None) -> Iterator[Constellation]:
    """Every witness with the first searched permutation fixed to its representative"""
    reason = _unsupported(datum)
    if reason:
        raise ValueError(reason)
    budget = Config.ORACLE_BUDGET if budget is None else budget
    plan = _SearchPlan.for_datum(datum)
    counter = [0]
    for shard in _shards(plan):
        for witness in _iter_witnesses(plan, shard, budget, counter):
            yield Constellation(datum.degree, plan.restore(witness))


def count_classes(datum: BranchDatum, budget: Optional[int] = None) -> int:
    """Witnesses up to simultaneous conjugation by S_d"""
    reason = _unsupported(datum)
    if reason:
        raise ValueError(reason)
    if not check_compatibility(datum).compatible:
        return 0
    budget = Config.ORACLE_BUDGET if budget is None else budget
    plan = _SearchPlan.for_datum(datum)
    d = datum.degree
    counter = [0]

    if d <= Config.COUNT_CANONICAL_MAX_DEGREE:
        forms = set()
        for shard in _shards(plan):
            for witness in _iter_witnesses(plan, shard, budget, counter):
                forms.add(canonical_form(witness, d)[0])
        return len(forms)

    # each class meets {sigma_1 = fixed} in |C(fixed)| / |Aut| tuples
    centralizer = Fraction(math.factorial(d), class_size(plan.searched_types()[0]))
    total = Fraction(0)
    for shard in _shards(plan):
        for witness in _iter_witnesses(plan, shard, budget, counter):
            total += Fraction(canonical_form(witness, d)[1]) / centralizer
    assert total.denominator == 1, f"orbit count {total} is not an integer"
    return int(total)
