"""
Dessins d'enfants as bipartite rotation systems

Darts come in pairs, one per edge end. A dessin with E edges built from
rotations (b, w) on edges numbers the black end of edge e as dart 2e and the
white end as 2e + 1; the rotation moves 2e to 2b(e) and 2e + 1 to 2w(e) + 1.
Faces are the orbits of ``x -> rotation[edge_pairing[x]]``. A face orbit of
2k darts passes k edges on each side and covers a disc of local degree k.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .branch_data import BranchDatum, Partition, SurfaceClass, check_compatibility, enumerate_compatible
from .oracle import Constellation
from .permutations import (
    CycleChains, Perm, canonical_representative, compose, cycle_type, cycles, inverse,
    is_permutation, is_transitive, orbits,
)

logger = logging.getLogger(__name__)

BLACK = 1
WHITE = 2


class InvalidDessinError(ValueError):
    pass


class UnsupportedDatumError(ValueError):
    """The datum lies outside what this module handles"""


@dataclass(frozen=True)
class Dessin:
    edge_pairing: Perm
    rotation: Perm
    colors: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edge_pairing", tuple(self.edge_pairing))
        object.__setattr__(self, "rotation", tuple(self.rotation))
        object.__setattr__(self, "colors", tuple(self.colors))
        self.validate()

    def validate(self):
        darts = len(self.edge_pairing)
        if darts == 0 or darts % 2:
            raise InvalidDessinError(f"a dessin needs a positive even number of darts, got {darts}")
        if len(self.rotation) != darts or len(self.colors) != darts:
            raise InvalidDessinError("edge_pairing, rotation and colors must have one entry per dart")
        if not is_permutation(self.edge_pairing, darts) or not is_permutation(self.rotation, darts):
            raise InvalidDessinError("edge_pairing and rotation must be permutations of the darts")
        for x, y in enumerate(self.edge_pairing):
            if x == y or self.edge_pairing[y] != x:
                raise InvalidDessinError(f"edge_pairing is not a fixed-point-free involution at dart {x}")
            if self.colors[x] == self.colors[y]:
                raise InvalidDessinError(f"edge {{{x},{y}}} joins two vertices of color {self.colors[x]}")
        for x, y in enumerate(self.rotation):
            if self.colors[x] not in (BLACK, WHITE):
                raise InvalidDessinError(f"dart {x} has color {self.colors[x]}, expected 1 or 2")
            if self.colors[x] != self.colors[y]:
                raise InvalidDessinError(f"rotation mixes colors at dart {x}")
        if len(orbits([self.edge_pairing, self.rotation], darts)) != 1:
            raise InvalidDessinError("the map is not connected")

    @classmethod
    def from_rotations(cls, black: Sequence[int], white: Sequence[int]) -> "Dessin":
        """Dessin whose edges are sheets, black and white rotations given on edges"""
        d = len(black)
        pairing, rotation, colors = [0] * (2 * d), [0] * (2 * d), [0] * (2 * d)
        for e in range(d):
            pairing[2 * e], pairing[2 * e + 1] = 2 * e + 1, 2 * e
            rotation[2 * e] = 2 * black[e]
            rotation[2 * e + 1] = 2 * white[e] + 1
            colors[2 * e], colors[2 * e + 1] = BLACK, WHITE
        return cls(tuple(pairing), tuple(rotation), tuple(colors))

    @classmethod
    def from_constellation(cls, constellation: Constellation) -> "Dessin":
        if len(constellation.perms) != 3:
            raise UnsupportedDatumError("dessins encode constellations of length 3")
        return cls.from_rotations(constellation.perms[0], constellation.perms[1])

    @property
    def edge_count(self) -> int:
        return len(self.edge_pairing) // 2

    def vertices(self) -> List[List[int]]:
        return cycles(self.rotation)

    def valences(self, color: int) -> Tuple[int, ...]:
        return tuple(sorted(
            (len(v) for v in self.vertices() if self.colors[v[0]] == color), reverse=True
        ))

    def faces(self) -> List[List[int]]:
        return cycles(compose(self.edge_pairing, self.rotation))

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - self.edge_count + len(self.faces())

    def edges(self) -> List[Tuple[int, int]]:
        """(black dart, white dart) per edge, ordered by black dart"""
        return [
            (x, y) for x, y in enumerate(self.edge_pairing) if self.colors[x] == BLACK
        ]

    def to_constellation(self) -> Constellation:
        """Edges become sheets; sigma_1, sigma_2 rotate around black and white vertices"""
        edges = self.edges()
        edge_of = {}
        for e, (x, y) in enumerate(edges):
            edge_of[x] = edge_of[y] = e
        black = tuple(edge_of[self.rotation[x]] for x, _ in edges)
        white = tuple(edge_of[self.rotation[y]] for _, y in edges)
        return Constellation(len(edges), (black, white, inverse(compose(black, white))))

    def datum(self) -> BranchDatum:
        black, white, third = self.to_constellation().perms
        return BranchDatum(
            SurfaceClass.orientable_genus(genus(self)),
            SurfaceClass.sphere(),
            self.edge_count,
            (Partition(cycle_type(black)), Partition(cycle_type(white)), Partition(cycle_type(third))),
        )

    def canonical_form(self) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
        """Least breadth-first relabeling over every root dart"""
        darts = len(self.edge_pairing)
        best = None
        for root in range(darts):
            label = [-1] * darts
            label[root] = 0
            queue = [root]
            for x in queue:
                for y in (self.edge_pairing[x], self.rotation[x]):
                    if label[y] < 0:
                        label[y] = len(queue)
                        queue.append(y)
            form = (
                tuple(label[self.edge_pairing[x]] for x in queue),
                tuple(label[self.rotation[x]] for x in queue),
                tuple(self.colors[x] for x in queue),
            )
            if best is None or form < best:
                best = form
        return best

    def is_isomorphic(self, other: "Dessin") -> bool:
        return self.canonical_form() == other.canonical_form()

    def to_graph(self) -> nx.MultiGraph:
        """Underlying bipartite multigraph, one node per vertex, one edge per dessin edge"""
        graph = nx.MultiGraph()
        vertex_of = {}
        for v, cycle in enumerate(self.vertices()):
            color = self.colors[cycle[0]]
            graph.add_node(v, color=color, valence=len(cycle))
            for x in cycle:
                vertex_of[x] = v
        for e, (x, y) in enumerate(self.edges()):
            graph.add_edge(vertex_of[x], vertex_of[y], key=e)
        return graph

    def to_dot(self, name: str = "dessin") -> str:
        graph = self.to_graph()
        lines = [f"graph {name} {{"]
        for v, attrs in graph.nodes(data=True):
            fill = "black" if attrs["color"] == BLACK else "white"
            lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label=""];')
        for u, v, key in graph.edges(keys=True):
            lines.append(f'  v{u} -- v{v} [label="{key + 1}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {
            "edge_pairing": list(self.edge_pairing),
            "rotation": list(self.rotation),
            "colors": list(self.colors),
        }

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "Dessin":
        try:
            return cls(tuple(raw["edge_pairing"]), tuple(raw["rotation"]), tuple(raw["colors"]))
        except (KeyError, TypeError) as e:
            raise InvalidDessinError(f"malformed dessin JSON: {e}") from e


def face_lengths(dessin: Dessin) -> Tuple[int, ...]:
    """Dart counts of the faces, largest first; a face of length 2k has local degree k"""
    return tuple(sorted((len(f) for f in dessin.faces()), reverse=True))


def genus(dessin: Dessin) -> int:
    chi = dessin.euler_characteristic()
    if chi > 2 or chi % 2:
        raise InvalidDessinError(f"Euler characteristic {chi} is not that of an orientable surface")
    return (2 - chi) // 2


def _check_datum(datum: BranchDatum):
    if datum.n != 3:
        raise UnsupportedDatumError(f"dessins need exactly three partitions, got {datum.n}")
    if not datum.base.is_sphere:
        raise UnsupportedDatumError("dessins cover the sphere only")
    if not datum.cover.orientable:
        raise UnsupportedDatumError("dessins live on orientable surfaces")


def _white_rotations(black: Perm, white_type: Sequence[int], face_type: Sequence[int],
                     first_image: Optional[int]) -> Iterator[Perm]:
    """White rotations of the given type whose face composite e -> b(w(e)) has face_type"""
    d = len(black)
    white = [-1] * d
    white_chains = CycleChains(white_type)
    face_chains = CycleChains(face_type)

    def attach(x: int) -> Iterator[Perm]:
        if x == d:
            yield tuple(white)
            return
        candidates = range(d) if (x or first_image is None) else (first_image,)
        for y in candidates:
            if not white_chains.push(x, y):
                continue
            if face_chains.push(x, black[y]):
                white[x] = y
                yield from attach(x + 1)
                white[x] = -1
                face_chains.pop()
            white_chains.pop()

    yield from attach(0)


def _enumerate_shard(args) -> List[Tuple[Tuple, Dessin]]:
    black, white_type, face_type, shard = args
    d = len(black)
    seen = {}
    for white in _white_rotations(black, white_type, face_type, shard):
        if not is_transitive([black, white], d):
            continue
        dessin = Dessin.from_rotations(black, white)
        form = dessin.canonical_form()
        if form not in seen:
            seen[form] = dessin
    return list(seen.items())


def enumerate_dessins(datum: BranchDatum, workers: int = 1) -> Iterator[Dessin]:
    """One dessin per isomorphism class realizing a three-partition datum over the sphere.

    The black rotation is fixed to consecutive blocks of partition 1, white
    rotations of type partition 2 are built by backtracking while the face
    composite is kept to partition 3. Shards split on the white image of
    edge 0 and merge in shard order.
    """
    _check_datum(datum)
    if not check_compatibility(datum).compatible:
        return
    p1, p2, p3 = (p.parts for p in datum.partitions)
    black = canonical_representative(p1)
    shards = [(black, p2, p3, y) for y in range(datum.degree)]

    seen = set()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for found in pool.map(_enumerate_shard, shards):
                for form, dessin in found:
                    if form not in seen:
                        seen.add(form)
                        yield dessin
        return

    for black_rot, white_type, face_type, shard in shards:
        for white in _white_rotations(black_rot, white_type, face_type, shard):
            if not is_transitive([black_rot, white], datum.degree):
                continue
            dessin = Dessin.from_rotations(black_rot, white)
            form = dessin.canonical_form()
            if form in seen:
                continue
            seen.add(form)
            assert genus(dessin) == datum.cover.genus, f"dessin genus disagrees with {datum}"
            yield dessin


def count_dessins(datum: BranchDatum, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_dessins(datum, workers))


def torus_data_without_ones(d: int) -> List[BranchDatum]:
    """Compatible (T, S, 3, d, (d-2, 2), p2, p3) with no part equal to 1.

    For d >= 7 each of these has a dessin, found by ``enumerate_dessins``.
    """
    if d < 4:
        return []
    first = Partition.of(d - 2, 2)
    return [
        datum
        for datum in enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.torus(), 3, d, first)
        if all(part >= 2 for p in datum.partitions[1:] for part in p)
    ]
