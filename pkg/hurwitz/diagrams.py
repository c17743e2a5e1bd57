"""
Genus-0 diagrams: a circle with n*d labelled points and a forest of chords

Point k carries label (k mod n) + 1, counter-clockwise. Chords join points of
one label and run inside the circle (black side) or outside it (white side);
each tree of the forest stands for one entry of the partition of its label,
the entry being the number of points of the tree. Arc k runs from point k to
point k + 1 and carries the label of point k.

A diagram is valid when chords on one side never cross, the chords form a
forest with 2d - 2 edges, tree sizes per label give the datum's partitions,
and every face on either side is bounded by exactly one arc of each label.
"""

import enum
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .branch_data import BranchDatum, Partition, SurfaceClass, check_compatibility
from .oracle import Constellation
from .permutations import UnionFind

logger = logging.getLogger(__name__)

BLACK = "black"
WHITE = "white"
SIDES = (BLACK, WHITE)

Chord = Tuple[int, int, str]


class DiagramError(ValueError):
    pass


class MoveError(DiagramError):
    pass


def _cross(a: int, b: int, c: int, e: int) -> bool:
    """Chords {a, b} and {c, e} with a < b, c < e cross"""
    if len({a, b, c, e}) < 4:
        return False
    return (a < c < b) != (a < e < b)


@dataclass(frozen=True)
class Tree:
    label: int
    points: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.points)

    @property
    def is_point(self) -> bool:
        return len(self.points) == 1


@dataclass(frozen=True)
class SphereDiagram:
    n: int
    d: int
    chords: Tuple[Chord, ...]
    marked_arc: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        normalized = []
        for chord in self.chords:
            if len(chord) != 3:
                raise DiagramError(f"chord {chord!r} must be (a, b, side)")
            a, b, side = chord
            normalized.append((min(a, b), max(a, b), side))
        object.__setattr__(self, "chords", tuple(sorted(normalized)))

    @property
    def size(self) -> int:
        return self.n * self.d

    def label(self, point: int) -> int:
        return point % self.n + 1

    def trees(self) -> List[Tree]:
        uf = UnionFind(self.size)
        for a, b, _ in self.chords:
            uf.union(a, b)
        groups: Dict[int, List[int]] = {}
        for x in range(self.size):
            groups.setdefault(uf.find(x), []).append(x)
        return sorted(
            (Tree(self.label(points[0]), tuple(points)) for points in groups.values()),
            key=lambda t: t.points[0],
        )

    def tree_of(self) -> Dict[int, Tree]:
        return {x: tree for tree in self.trees() for x in tree.points}

    def is_forest(self) -> bool:
        uf = UnionFind(self.size)
        return all(uf.union(a, b) for a, b, _ in self.chords)

    def degrees(self, label: int) -> Partition:
        return Partition(tuple(t.degree for t in self.trees() if t.label == label))

    def datum(self) -> BranchDatum:
        if not self.is_forest():
            raise DiagramError("chords do not form a forest")
        return BranchDatum(
            SurfaceClass.sphere(),
            SurfaceClass.sphere(),
            self.d,
            tuple(self.degrees(label) for label in range(1, self.n + 1)),
        )

    def faces(self, side: str) -> List[Tuple[int, ...]]:
        """Arcs bounding each face on one side, faces ordered by their least arc"""
        size = self.size
        at: Dict[int, List[Tuple[int, int]]] = {x: [] for x in range(size)}
        for a, b, s in self.chords:
            if s != side:
                continue
            at[a].append(((b - a) % size, b))
            at[b].append(((a - b) % size, a))
        for x in at:
            at[x].sort()

        seen = [False] * size
        result = []
        for start in range(size):
            if seen[start]:
                continue
            arcs = []
            arc = start
            while True:
                seen[arc] = True
                arcs.append(arc)
                x, offset = (arc + 1) % size, size
                while True:
                    turn = [(o, y) for o, y in at[x] if o < offset]
                    if not turn:
                        break
                    _, y = turn[-1]
                    offset = (x - y) % size
                    x = y
                arc = x
                if arc == start:
                    break
                if seen[arc]:
                    raise DiagramError(f"face tracing on the {side} side revisits arc {arc}")
            result.append(tuple(sorted(arcs)))
        return sorted(result)

    def gamma_11(self) -> Tree:
        """The label-1 tree of size d - 2; the lowest one when two qualify"""
        candidates = [t for t in self.trees() if t.label == 1 and t.degree == self.d - 2]
        if not candidates:
            raise DiagramError(f"no label-1 tree of size {self.d - 2}: first partition is not (d-2,2)")
        return candidates[0]

    def arc_targets(self) -> List[Tuple[int, int, Tree]]:
        """(arc, label i, tree) for every arc joining the big label-1 tree to a tree of label i"""
        if self.n != 3:
            raise DiagramError("accessibility is defined for three labels")
        big = set(self.gamma_11().points)
        owner = self.tree_of()
        result = []
        for arc in range(self.size):
            start, end = arc, (arc + 1) % self.size
            if self.label(start) == 1 and start in big:
                result.append((arc, 2, owner[end]))
            elif self.label(start) == 3 and end in big:
                result.append((arc, 3, owner[start]))
        return result

    def to_json(self) -> Dict[str, Any]:
        data = {"n": self.n, "d": self.d, "chords": [[a, b, s] for a, b, s in self.chords]}
        if self.marked_arc is not None:
            data["marked_arc"] = self.marked_arc
        return data

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "SphereDiagram":
        try:
            chords = tuple((int(a), int(b), str(s)) for a, b, s in raw["chords"])
            return cls(int(raw["n"]), int(raw["d"]), chords, raw.get("marked_arc"))
        except (KeyError, TypeError, ValueError) as e:
            raise DiagramError(f"malformed diagram JSON: {e}") from e


@dataclass(frozen=True)
class Validation:
    ok: bool
    problems: Tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def _check_chords(diag: SphereDiagram) -> List[str]:
    problems = []
    for a, b, side in diag.chords:
        if side not in SIDES:
            problems.append(f"chord ({a},{b}) has side {side!r}")
        if not (0 <= a < diag.size and 0 <= b < diag.size):
            problems.append(f"chord ({a},{b}) leaves the {diag.size} marked points")
        elif a == b:
            problems.append(f"chord ({a},{b}) is a loop")
        elif diag.label(a) != diag.label(b):
            problems.append(f"chord ({a},{b}) joins labels {diag.label(a)} and {diag.label(b)}")
    if len(set(diag.chords)) != len(diag.chords):
        problems.append("repeated chord")
    return problems


def _check_crossings(diag: SphereDiagram) -> List[str]:
    problems = []
    chords = diag.chords
    for k, (a, b, s) in enumerate(chords):
        for c, e, t in chords[k + 1:]:
            if s == t and _cross(a, b, c, e):
                problems.append(f"{s} chords ({a},{b}) and ({c},{e}) cross")
    return problems


def _check_faces(diag: SphereDiagram) -> List[str]:
    problems = []
    for side in SIDES:
        faces = diag.faces(side)
        if len(faces) != diag.d:
            problems.append(f"{len(faces)} {side} faces, expected {diag.d}")
        for face in faces:
            labels = sorted(diag.label(arc) for arc in face)
            if labels != list(range(1, diag.n + 1)):
                problems.append(f"{side} face on arcs {list(face)} has arc labels {labels}")
    return problems


def validate(diag: SphereDiagram, datum: BranchDatum) -> Validation:
    """All diagram conditions against a datum; diagnostics name the first stage that fails"""
    frame = []
    if not datum.base.is_sphere or not datum.cover.is_sphere:
        frame.append("diagrams realize sphere covers of the sphere")
    if datum.n != diag.n or datum.degree != diag.d:
        frame.append(f"diagram has n={diag.n}, d={diag.d}; datum has n={datum.n}, d={datum.degree}")

    stages = [
        lambda: frame,
        lambda: _check_chords(diag),
        lambda: _check_crossings(diag),
        lambda: [] if diag.is_forest() else ["chords contain a cycle"],
        lambda: [] if len(diag.chords) == 2 * diag.d - 2
        else [f"{len(diag.chords)} chords, expected {2 * diag.d - 2}"],
        lambda: [
            f"label {label} trees have sizes {diag.degrees(label)}, expected {partition}"
            for label, partition in enumerate(datum.partitions, start=1)
            if diag.degrees(label) != partition
        ],
        lambda: _check_faces(diag),
    ]
    for stage in stages:
        problems = stage()
        if problems:
            return Validation(False, tuple(problems))
    return Validation(True)


def to_constellation(diag: SphereDiagram) -> Constellation:
    """White faces are the sheets. sigma_i carries a white face W to the white
    face across the label-i arc of the black face holding W's label-(i-1) arc."""
    problems = _check_faces(diag)
    if problems:
        raise DiagramError(problems[0])
    size = diag.size
    black_of = [0] * size
    white_of = [0] * size
    black_arcs: List[Dict[int, int]] = []
    white_arcs: List[Dict[int, int]] = []
    for owner, arcs_by_label, side in ((black_of, black_arcs, BLACK), (white_of, white_arcs, WHITE)):
        for index, face in enumerate(diag.faces(side)):
            arcs_by_label.append({diag.label(arc): arc for arc in face})
            for arc in face:
                owner[arc] = index

    perms = []
    for i in range(1, diag.n + 1):
        previous = i - 1 if i > 1 else diag.n
        images = []
        for face in white_arcs:
            black = black_of[face[previous]]
            images.append(white_of[black_arcs[black][i]])
        perms.append(tuple(images))
    return Constellation(diag.d, tuple(perms))


def mirror(diag: SphereDiagram) -> SphereDiagram:
    """Reflection k -> -k; with three labels it swaps labels 2 and 3"""
    size = diag.size
    return SphereDiagram(
        diag.n, diag.d, tuple(((-a) % size, (-b) % size, s) for a, b, s in diag.chords)
    )


def accessible_trees(diag: SphereDiagram) -> List[Tree]:
    """Label 2 and 3 trees joined to the big label-1 tree by an arc"""
    reached = {tree for _, _, tree in diag.arc_targets()}
    return [t for t in diag.trees() if t in reached]


def inaccessible_trees(diag: SphereDiagram) -> List[Tree]:
    reached = set(accessible_trees(diag))
    return [t for t in diag.trees() if t.label != 1 and t not in reached]


# datum-level shadows; j is 1-based into the partition, which is kept sorted


def _first_is_d_minus_2(datum: BranchDatum):
    d = datum.degree
    if datum.n != 3 or datum.partitions[0] != Partition.of(d - 2, 2):
        raise MoveError(f"{datum} does not start with (d-2,2)")


def _bump(partition: Partition, j: int, by: int, extra: Sequence[int] = ()) -> Tuple[int, ...]:
    if not 1 <= j <= partition.length:
        raise MoveError(f"index {j} out of range for {partition}")
    parts = list(partition.parts)
    parts[j - 1] += by
    return tuple(parts) + tuple(extra)


def _shadow(datum: BranchDatum, grow: int, second: Tuple[int, ...], third: Tuple[int, ...]) -> BranchDatum:
    d = datum.degree + grow
    return BranchDatum(
        datum.cover, datum.base, d, (Partition.of(d - 2, 2), Partition(second), Partition(third))
    )


def _split(datum: BranchDatum, i: int) -> Tuple[Partition, Partition]:
    if i not in (2, 3):
        raise MoveError(f"i must be 2 or 3, got {i}")
    return datum.partitions[i - 1], datum.partitions[4 - i]


def mu_hat(datum: BranchDatum, i: int, j: int) -> BranchDatum:
    """Degree +1: entry j of partition i grows by 1, the other partition gains a 1"""
    _first_is_d_minus_2(datum)
    grown, other = _split(datum, i)
    grown_parts, other_parts = _bump(grown, j, 1), other.parts + (1,)
    pair = (grown_parts, other_parts) if i == 2 else (other_parts, grown_parts)
    return _shadow(datum, 1, *pair)


def mu_hat_1(datum: BranchDatum, j2: int, j3: int) -> BranchDatum:
    _first_is_d_minus_2(datum)
    second, third = datum.partitions[1], datum.partitions[2]
    return _shadow(datum, 2, _bump(second, j2, 1, (1,)), _bump(third, j3, 1, (1,)))


def mu_hat_2(datum: BranchDatum, i: int, j: int) -> BranchDatum:
    _first_is_d_minus_2(datum)
    grown, other = _split(datum, i)
    grown_parts, other_parts = _bump(grown, j, 2), other.parts + (1, 1)
    pair = (grown_parts, other_parts) if i == 2 else (other_parts, grown_parts)
    return _shadow(datum, 2, *pair)


def mu_hat_3(datum: BranchDatum, i: int, j: int) -> BranchDatum:
    _first_is_d_minus_2(datum)
    grown, other = _split(datum, i)
    grown_parts, other_parts = _bump(grown, j, 1, (1,)), other.parts + (2,)
    pair = (grown_parts, other_parts) if i == 2 else (other_parts, grown_parts)
    return _shadow(datum, 2, *pair)


class MoveKind(enum.Enum):
    MU = "mu"
    MU1 = "mu1"
    MU2 = "mu2"
    MU3 = "mu3"


@dataclass(frozen=True)
class DiagramMove:
    kind: MoveKind
    arcs: Tuple[int, ...]

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "arcs": list(self.arcs)}

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "DiagramMove":
        return cls(MoveKind(raw["kind"]), tuple(raw["arcs"]))


# chord templates as (offset, offset, side) from the start of the chosen arc
_MU_TEMPLATES = {
    1: ((0, 3, BLACK), (1, 4, WHITE)),
    3: ((1, 4, BLACK), (0, 3, WHITE)),
}
_MU3_TEMPLATES = {
    1: ((0, 3, BLACK), (3, 6, BLACK), (2, 5, WHITE), (1, 7, WHITE)),
    3: ((4, 7, BLACK), (1, 4, BLACK), (2, 5, WHITE), (0, 6, WHITE)),
}


def _insert(diag: SphereDiagram, arc: int, count: int, template: Sequence[Chord],
            marked: Optional[int] = None) -> SphereDiagram:
    """Insert ``count`` points on an arc and add template chords around them"""
    new_size = diag.size + count

    def shift(k: int) -> int:
        return k if k <= arc else k + count

    chords = [(shift(a), shift(b), s) for a, b, s in diag.chords]
    chords += [((arc + p) % new_size, (arc + q) % new_size, s) for p, q, s in template]
    return SphereDiagram(diag.n, diag.d + count // diag.n, tuple(chords), marked)


def _mu(diag: SphereDiagram, arc: int) -> SphereDiagram:
    return _insert(diag, arc, 3, _MU_TEMPLATES[diag.label(arc)])


def _target(diag: SphereDiagram, arc: int) -> Tuple[int, Tree]:
    size = diag.size
    if not 0 <= arc < size:
        raise MoveError(f"arc {arc} out of range 0..{size - 1}")
    for candidate, i, tree in diag.arc_targets():
        if candidate == arc:
            return i, tree
    raise MoveError(f"arc {arc} does not join the big label-1 tree to a label 2 or 3 tree")


def _index_of(partition: Partition, degree: int) -> int:
    return partition.parts.index(degree) + 1


def apply_move(diag: SphereDiagram, move: DiagramMove) -> SphereDiagram:
    """Apply a move and check the result realizes the shadow of the move on the datum"""
    datum = diag.datum()
    _first_is_d_minus_2(datum)

    if move.kind is MoveKind.MU1:
        if len(move.arcs) != 2:
            raise MoveError("mu1 takes two arcs (e2, e3)")
        e2, e3 = move.arcs
        i2, t2 = _target(diag, e2)
        i3, t3 = _target(diag, e3)
        if (i2, i3) != (2, 3):
            raise MoveError(f"mu1 needs a label-2 target on e2 and a label-3 target on e3, got {i2}, {i3}")
        expected = mu_hat_1(
            datum, _index_of(datum.partitions[1], t2.degree), _index_of(datum.partitions[2], t3.degree)
        )
        result = diag
        for arc in sorted((e2, e3), reverse=True):
            result = _mu(result, arc)
    else:
        if len(move.arcs) != 1:
            raise MoveError(f"{move.kind.value} takes one arc")
        (arc,) = move.arcs
        i, tree = _target(diag, arc)
        j = _index_of(datum.partitions[i - 1], tree.degree)
        if move.kind is MoveKind.MU:
            expected = mu_hat(datum, i, j)
            result = _mu(diag, arc)
        elif move.kind is MoveKind.MU2:
            expected = mu_hat_2(datum, i, j)
            result = _mu(_mu(diag, arc), arc)
        else:
            expected = mu_hat_3(datum, i, j)
            result = _insert(diag, arc, 6, _MU3_TEMPLATES[diag.label(arc)], marked=arc + 3)

    check = validate(result, expected)
    if not check:
        raise MoveError(f"{move.kind.value} on arcs {list(move.arcs)} broke the diagram: {check.problems[0]}")
    return result


def search_diagrams(datum: BranchDatum) -> Iterator[SphereDiagram]:
    """Every valid diagram for a sphere datum, by depth-first choice of chords label by label"""
    if not datum.base.is_sphere or not datum.cover.is_sphere:
        raise DiagramError("diagrams realize sphere covers of the sphere")
    n, d = datum.n, datum.degree
    size = n * d
    need = [d - p.length for p in datum.partitions]
    if sum(need) != 2 * d - 2:
        return
    candidates = [
        [(a, b, s) for a in range(label, size, n) for b in range(a + n, size, n) for s in SIDES]
        for label in range(n)
    ]
    chosen: List[Chord] = []

    def fits(chord: Chord, comp: List[int], largest: int) -> bool:
        a, b, side = chord
        if comp[a] == comp[b]:
            return False
        if comp.count(comp[a]) + comp.count(comp[b]) > largest:
            return False
        return not any(s == side and _cross(a, b, c, e) for c, e, s in chosen)

    def sizes(comp: List[int], label: int) -> Tuple[int, ...]:
        roots = [comp[x] for x in range(label, size, n)]
        return tuple(sorted((roots.count(r) for r in set(roots)), reverse=True))

    def pick(label: int, start: int, left: int, comp: List[int]) -> Iterator[SphereDiagram]:
        if left == 0:
            if sizes(comp, label) != datum.partitions[label].parts:
                return
            if label == n - 1:
                diag = SphereDiagram(n, d, tuple(chosen))
                if validate(diag, datum):
                    yield diag
                return
            yield from pick(label + 1, 0, need[label + 1], comp)
            return
        pool = candidates[label]
        largest = datum.partitions[label].parts[0]
        for index in range(start, len(pool) - left + 1):
            chord = pool[index]
            if not fits(chord, comp, largest):
                continue
            a, b, _ = chord
            old, new = comp[b], comp[a]
            merged = [new if r == old else r for r in comp]
            chosen.append(chord)
            yield from pick(label, index + 1, left - 1, merged)
            chosen.pop()

    yield from pick(0, 0, need[0], list(range(size)))


BASE_PARTITIONS = {
    "D1": ((4, 1), (3, 1, 1)),
    "D2": ((4, 1), (2, 2, 1)),
    "D3": ((3, 2), (3, 1, 1)),
    "D4": ((3, 2), (2, 2, 1)),
}


def base_datum(name: str) -> BranchDatum:
    try:
        second, third = BASE_PARTITIONS[name]
    except KeyError:
        raise DiagramError(f"unknown base diagram {name!r}, expected one of {sorted(BASE_PARTITIONS)}")
    return BranchDatum.sphere_cover(0, 5, (3, 2), second, third)


@lru_cache(maxsize=None)
def base_diagram(name: str) -> SphereDiagram:
    """First diagram found for a degree-5 base datum with the required accessibility:
    D1, D2, D3 have exactly one inaccessible tree, a point; D4 has none."""
    datum = base_datum(name)
    wanted = 0 if name == "D4" else 1
    for diag in search_diagrams(datum):
        hidden = inaccessible_trees(diag)
        if len(hidden) == wanted and all(t.is_point for t in hidden):
            logger.debug(f"Base diagram {name}: {diag.chords}")
            return diag
    raise DiagramError(f"no diagram for {name} with {wanted} inaccessible trees")


@dataclass(frozen=True)
class Construction:
    base: str
    mirrored: bool
    moves: Tuple[DiagramMove, ...]
    diagram: SphereDiagram

    def replay(self) -> SphereDiagram:
        diag = base_diagram(self.base)
        if self.mirrored:
            diag = mirror(diag)
        for move in self.moves:
            diag = apply_move(diag, move)
        return diag

    def to_json(self) -> Dict[str, Any]:
        return {
            "base": self.base,
            "mirrored": self.mirrored,
            "moves": [m.to_json() for m in self.moves],
            "diagram": self.diagram.to_json(),
        }


# an inverse step: (kind, i, entries in the target datum that the move produced)
Step = Tuple[MoveKind, int, Tuple[int, ...]]


def _remove(parts: List[int], value: int) -> bool:
    if value not in parts:
        return False
    parts.remove(value)
    return True


def _predecessor(second: Tuple[int, ...], third: Tuple[int, ...], step: Step):
    kind, i, values = step
    q = {2: list(second), 3: list(third)}
    if kind is MoveKind.MU1:
        for label, x in zip((2, 3), values):
            if x < 2 or not _remove(q[label], x) or not _remove(q[label], 1):
                return None
            q[label].append(x - 1)
    else:
        (x,) = values
        other = 5 - i
        if kind is MoveKind.MU2:
            if x < 3 or not _remove(q[i], x) or not (_remove(q[other], 1) and _remove(q[other], 1)):
                return None
            q[i].append(x - 2)
        else:
            if x < 2 or not _remove(q[i], x) or not _remove(q[i], 1) or not _remove(q[other], 2):
                return None
            q[i].append(x - 1)
    if not q[2] or not q[3]:
        return None
    return tuple(sorted(q[2], reverse=True)), tuple(sorted(q[3], reverse=True))


def _threes_and_twos(parts: Tuple[int, ...]) -> bool:
    return 3 in parts and set(parts) <= {2, 3}


def _twos_and_ones(parts: Tuple[int, ...]) -> bool:
    return set(parts) <= {1, 2}


def _proof_steps(second: Tuple[int, ...], third: Tuple[int, ...]) -> List[Step]:
    steps: List[Step] = []
    for a, b, ia, ib in ((second, third, 2, 3), (third, second, 3, 2)):
        if not _threes_and_twos(a):
            continue
        k = a.count(3)
        if _twos_and_ones(b) and b.count(1) == k:
            steps.append((MoveKind.MU3, ib, (2,)) if k == 1 else (MoveKind.MU2, ia, (3,)))
        elif b[0] >= 3:
            steps.append((MoveKind.MU3, ib, (b[0],)) if k == 1 else (MoveKind.MU2, ia, (3,)))
    if steps:
        return steps

    ones2, ones3 = 1 in second, 1 in third
    if ones2 and not ones3:
        steps.append((MoveKind.MU2, 3, (third[0],)))
    elif ones3 and not ones2:
        steps.append((MoveKind.MU2, 2, (second[0],)))
    elif ones2 and ones3:
        if second.count(1) == 1 and _twos_and_ones(second):
            steps.append((MoveKind.MU3, 3, (third[0],)))
        elif third.count(1) == 1 and _twos_and_ones(third):
            steps.append((MoveKind.MU3, 2, (second[0],)))
        else:
            steps.append((MoveKind.MU1, 0, (second[0], third[0])))
    return steps


def _all_steps(second: Tuple[int, ...], third: Tuple[int, ...]) -> List[Step]:
    steps: List[Step] = []
    for x2 in sorted(set(second), reverse=True):
        for x3 in sorted(set(third), reverse=True):
            steps.append((MoveKind.MU1, 0, (x2, x3)))
    for kind in (MoveKind.MU2, MoveKind.MU3):
        for i, parts in ((2, second), (3, third)):
            for x in sorted(set(parts), reverse=True):
                steps.append((kind, i, (x,)))
    return steps


def _lowest_arc(diag: SphereDiagram, label: int, degree: int) -> Optional[int]:
    for arc, i, tree in diag.arc_targets():
        if i == label and tree.degree == degree:
            return arc
    return None


def _forward(diag: SphereDiagram, step: Step) -> Optional[DiagramMove]:
    kind, i, values = step
    if kind is MoveKind.MU1:
        e2 = _lowest_arc(diag, 2, values[0] - 1)
        e3 = _lowest_arc(diag, 3, values[1] - 1)
        if e2 is None or e3 is None:
            return None
        return DiagramMove(kind, (e2, e3))
    shrink = 2 if kind is MoveKind.MU2 else 1
    arc = _lowest_arc(diag, i, values[0] - shrink)
    return None if arc is None else DiagramMove(kind, (arc,))


@lru_cache(maxsize=None)
def _construct(d: int, second: Tuple[int, ...], third: Tuple[int, ...]) -> Optional[Construction]:
    if d == 5:
        for name, (p2, p3) in BASE_PARTITIONS.items():
            if (p2, p3) == (second, third):
                diag = base_diagram(name)
                return Construction(name, False, (), diag)
            if (p3, p2) == (second, third):
                return Construction(name, True, (), mirror(base_diagram(name)))
        return None

    tried = set()
    for step in _proof_steps(second, third) + _all_steps(second, third):
        if step in tried:
            continue
        tried.add(step)
        previous = _predecessor(second, third, step)
        if previous is None or len(previous[0]) == 1 or len(previous[1]) == 1:
            continue
        built = _construct(d - 2, *previous)
        if built is None:
            continue
        move = _forward(built.diagram, step)
        if move is None:
            continue
        try:
            diag = apply_move(built.diagram, move)
        except MoveError as e:
            logger.debug(f"d={d} {second} {third}: {e}")
            continue
        logger.debug(f"d={d} {second} {third}: {move.kind.value} at {list(move.arcs)} from {previous}")
        return Construction(built.base, built.mirrored, built.moves + (move,), diag)
    return None


def build_sphere_odd(datum: BranchDatum) -> Construction:
    """Diagram for an odd-degree sphere datum with a (d-2,2) entry, and the moves that built it"""
    d = datum.degree
    if not datum.base.is_sphere or not datum.cover.is_sphere or datum.n != 3:
        raise DiagramError(f"{datum} is not a three-point sphere datum")
    if d % 2 == 0 or d < 5:
        raise DiagramError(f"degree must be odd and at least 5, got {d}")
    if datum.partitions[0] != Partition.of(d - 2, 2):
        raise DiagramError(f"first partition must be ({d - 2},2), got {datum.partitions[0]}")
    if not check_compatibility(datum).compatible:
        raise DiagramError(f"{datum} is not compatible")
    second, third = datum.partitions[1].parts, datum.partitions[2].parts
    if len(second) == 1 or len(third) == 1:
        raise DiagramError(f"{datum} contains a full cycle; it is realizable without a diagram")

    built = _construct(d, second, third)
    if built is None:
        raise DiagramError(f"no constructible diagram found for {datum}")
    check = validate(built.diagram, datum)
    if not check:
        raise DiagramError(f"constructed diagram fails validation: {check.problems[0]}")
    return built


def construct_sphere_odd(datum: BranchDatum) -> SphereDiagram:
    return build_sphere_odd(datum).diagram


def conjunction_datum(a: BranchDatum, b: BranchDatum, choices_a: Sequence[int],
                      choices_b: Sequence[int]) -> BranchDatum:
    """Datum realized by splicing two diagrams at one tree per label.

    Choices are 1-based positions into each partition; the two chosen entries
    of label i merge into one entry equal to their sum minus 1.
    """
    for datum in (a, b):
        if datum.n != 3 or not datum.base.is_sphere or not datum.cover.orientable:
            raise DiagramError(f"{datum} is not a three-point datum over the sphere")
    if len(choices_a) != 3 or len(choices_b) != 3:
        raise DiagramError("conjunction takes one position per partition on each side")

    merged = []
    for pa, pb, ja, jb in zip(a.partitions, b.partitions, choices_a, choices_b):
        if not 1 <= ja <= pa.length or not 1 <= jb <= pb.length:
            raise DiagramError(f"position {ja} in {pa} or {jb} in {pb} out of range")
        rest = list(pa.parts[:ja - 1] + pa.parts[ja:]) + list(pb.parts[:jb - 1] + pb.parts[jb:])
        merged.append(Partition(tuple(rest + [pa[ja - 1] + pb[jb - 1] - 1])))
    return BranchDatum(
        SurfaceClass.orientable_genus(a.cover.genus + b.cover.genus),
        SurfaceClass.sphere(),
        a.degree + b.degree - 1,
        tuple(merged),
    )
