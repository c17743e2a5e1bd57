"""
Minimal checkerboard graphs on orientable surfaces

The boundary of the black disc is a p-gon whose corners are identified with
Z_p, counter-clockwise meaning increasing index. A gluing permutation f of
Z_p identifies corners into q vertices; the white disc closes the surface
exactly when f~(k) = f(k + 1) is a single p-cycle. Then p - q = 2g.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Dict, List, Tuple

from .permutations import Perm, UnionFind, compose, cycle_notation, cycles, inverse, is_permutation

logger = logging.getLogger(__name__)


class InvalidGraphError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MinimalGraph:
    p: int
    f: Perm

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if self.p < 2:
            raise InvalidGraphError(f"p must be at least 2, got {self.p}")
        if not is_permutation(self.f, self.p):
            raise InvalidGraphError(f"{list(self.f)} is not a permutation of Z_{self.p}")
        if any(len(c) < 2 for c in cycles(self.f)):
            raise InvalidGraphError(f"f = {cycle_notation(self.f)} has a fixed point")
        if len(cycles(f_tilde(self))) != 1:
            raise InvalidGraphError(f"f~ of {cycle_notation(self.f)} is not a full cycle")

    @property
    def q(self) -> int:
        return len(cycles(self.f))

    @property
    def genus(self) -> int:
        return (self.p - self.q) // 2

    def rotated(self) -> "MinimalGraph":
        """Conjugate by the rotation k -> k + 1"""
        p = self.p
        images = [0] * p
        for k in range(p):
            images[(k + 1) % p] = (self.f[k] + 1) % p
        return MinimalGraph(p, tuple(images))

    def rotation_class(self) -> List["MinimalGraph"]:
        result = [self]
        current = self.rotated()
        while current != self:
            result.append(current)
            current = current.rotated()
        return result

    def canonical(self) -> "MinimalGraph":
        return min(self.rotation_class())

    def to_json(self) -> Dict[str, Any]:
        return {"p": self.p, "f": list(self.f), "genus": self.genus}

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "MinimalGraph":
        return cls(raw["p"], tuple(raw["f"]))

    def __str__(self):
        return f"p={self.p} f={cycle_notation(self.f)}"


def f_tilde(graph: MinimalGraph) -> Perm:
    p = graph.p
    return tuple(graph.f[(k + 1) % p] for k in range(p))


def h_map(graph: MinimalGraph) -> Perm:
    """k -> f~^k(0): the corner reached after k steps along the white boundary"""
    ft = f_tilde(graph)
    images = []
    x = 0
    for _ in range(graph.p):
        images.append(x)
        x = ft[x]
    return tuple(images)


def f_prime(graph: MinimalGraph) -> Perm:
    """h^-1 . f . h: the gluing seen from the white disc"""
    h = h_map(graph)
    return compose(compose(h, graph.f), inverse(h))


def _full_cycles(p: int):
    for tail in permutations(range(1, p)):
        order = (0,) + tail
        images = [0] * p
        for i, x in enumerate(order):
            images[x] = order[(i + 1) % p]
        yield tuple(images)


def _rotation_canonical(p: int, f: Perm) -> Perm:
    best = f
    current = f
    for _ in range(p - 1):
        images = [0] * p
        for k in range(p):
            images[(k + 1) % p] = (current[k] + 1) % p
        current = tuple(images)
        best = min(best, current)
    return best


def enumerate_minimal_graphs(g: int, coarse: bool = False) -> List[MinimalGraph]:
    """Every minimal checkerboard graph on the genus-g surface, once per rotation class.

    f~ runs over the (p - 1)! full cycles of Z_p and f is read back from it.
    With ``coarse`` the list is further quotiented by the colour swap f <-> f'.
    """
    if g < 1:
        return []
    found = set()
    for p in range(2, 4 * g + 1):
        q = p - 2 * g
        if q < 1:
            continue
        for ft in _full_cycles(p):
            f = tuple(ft[(k - 1) % p] for k in range(p))
            shape = cycles(f)
            if len(shape) != q or any(len(c) < 2 for c in shape):
                continue
            found.add((p, _rotation_canonical(p, f)))
    graphs = sorted(MinimalGraph(p, f) for p, f in found)
    logger.debug(f"Genus {g}: {len(graphs)} minimal graphs up to rotation")
    if not coarse:
        return graphs

    index = {graph: i for i, graph in enumerate(graphs)}
    uf = UnionFind(len(graphs))
    for graph in graphs:
        swapped = _rotation_canonical(graph.p, f_prime(graph))
        other = next((h for h in graphs if h.p == graph.p and h.f == swapped), None)
        if other is not None:
            uf.union(index[graph], index[other])
    representatives: Dict[int, MinimalGraph] = {}
    for graph in graphs:
        root = uf.find(index[graph])
        representatives.setdefault(root, graph)
    return sorted(representatives.values())


def enumerate_minimal_graphs_bruteforce(g: int) -> List[MinimalGraph]:
    """Unpruned double loop over every permutation of Z_p, for cross-checking"""
    if g < 1:
        return []
    orbits = set()
    for p in range(2, 4 * g + 1):
        for f in permutations(range(p)):
            ft = [f[(k + 1) % p] for k in range(p)]
            length = 1
            x = ft[0]
            while x != 0:
                x = ft[x]
                length += 1
            if length != p:
                continue
            shape = cycles(f)
            if any(len(c) < 2 for c in shape) or p - len(shape) != 2 * g:
                continue
            orbit = frozenset(graph.f for graph in MinimalGraph(p, f).rotation_class())
            orbits.add((p, orbit))
    return sorted(MinimalGraph(p, min(orbit)) for p, orbit in orbits)


@dataclass(frozen=True)
class SurfaceData:
    """Cell structure of the closed surface: q vertices, p edges, two discs"""

    vertices: Tuple[Tuple[int, ...], ...]
    edges: Tuple[Tuple[int, int], ...]
    black_boundary: Tuple[int, ...]
    white_boundary: Tuple[int, ...]
    f_prime: Perm = field(default=())

    @property
    def euler_characteristic(self) -> int:
        discs = 2 if self.black_boundary or not self.edges else 0
        return len(self.vertices) - len(self.edges) + discs

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "black_boundary": list(self.black_boundary),
            "white_boundary": list(self.white_boundary),
            "euler_characteristic": self.euler_characteristic,
        }


# the sphere's minimal graph is the vertexless circle, p = q = 0
SPHERE_SURFACE = SurfaceData(vertices=(), edges=(), black_boundary=(), white_boundary=())


def build_surface_data(graph: MinimalGraph) -> SurfaceData:
    """Vertices are the cycles of f, each in its cyclic germ order; edge k runs
    from the vertex of corner k to the vertex of corner k + 1"""
    p = graph.p
    vertices = tuple(tuple(c) for c in cycles(graph.f))
    vertex_of = {}
    for v, cycle in enumerate(vertices):
        for k in cycle:
            vertex_of[k] = v
    edges = tuple((vertex_of[k], vertex_of[(k + 1) % p]) for k in range(p))
    data = SurfaceData(
        vertices=vertices,
        edges=edges,
        black_boundary=tuple(range(p)),
        white_boundary=h_map(graph),
        f_prime=f_prime(graph),
    )
    assert data.euler_characteristic == 2 - 2 * graph.genus, f"Euler check fails for {graph}"
    return data
