"""
Permutation kernels shared by the oracle, the dessin enumerator and the diagrams

Permutations of {0..d-1} are plain tuples of images. Products are read left
to right: ``compose(p, q)`` applies ``p`` first and then ``q``, which is the
convention of ``sympy.combinatorics.Permutation.__mul__``.
"""

import math
from collections import Counter
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Perm = Tuple[int, ...]


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Apply p, then q"""
    return tuple(q[x] for x in p)


def product(perms: Iterable[Sequence[int]], d: int) -> Perm:
    result = identity(d)
    for p in perms:
        result = compose(result, p)
    return result


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(p: Sequence[int], g: Sequence[int]) -> Perm:
    """Relabel every point i as g[i]; the result is g^-1 p g"""
    q = [0] * len(p)
    for i, x in enumerate(p):
        q[g[i]] = g[x]
    return tuple(q)


def cycles(p: Sequence[int]) -> List[List[int]]:
    """Cycles of p, each starting at its smallest point, ordered by that point"""
    seen = [False] * len(p)
    result = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = p[x]
        result.append(cycle)
    return result


def cycle_type(p: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def cycle_notation(p: Sequence[int], offset: int = 0) -> str:
    """Non-trivial cycles as ``(a b c)(d e)``; ``()`` for the identity"""
    text = "".join(
        "(" + " ".join(str(x + offset) for x in c) + ")" for c in cycles(p) if len(c) > 1
    )
    return text or "()"


def is_permutation(p: Sequence[int], d: int) -> bool:
    return len(p) == d and sorted(p) == list(range(d))


def from_cycles(cycle_list: Iterable[Sequence[int]], d: int) -> Perm:
    images = list(range(d))
    for cycle in cycle_list:
        for k, x in enumerate(cycle):
            images[x] = cycle[(k + 1) % len(cycle)]
    return tuple(images)


def canonical_representative(parts: Sequence[int]) -> Perm:
    """The permutation whose cycles are consecutive blocks of lengths ``parts``"""
    images = []
    start = 0
    for length in parts:
        images.extend(start + (k + 1) % length for k in range(length))
        start += length
    return tuple(images)


def class_size(parts: Sequence[int]) -> int:
    d = sum(parts)
    denominator = 1
    for length, count in Counter(parts).items():
        denominator *= length**count * math.factorial(count)
    return math.factorial(d) // denominator


class CycleChains:
    """Partial permutation kept as open chains.

    ``push(x, y)`` sets the image of ``x``, the current end of a chain, to
    ``y``. A chain is closed only into a cycle length still required and never
    grows past the longest one still required. ``pop`` undoes the last push.
    """

    def __init__(self, parts: Sequence[int]):
        d = sum(parts)
        self.remaining: Dict[int, int] = Counter(parts)
        self.head = list(range(d))
        self.tail = list(range(d))
        self.length = [1] * d
        self.used = [False] * d
        self.undo: List[Tuple] = []

    def longest(self) -> int:
        return max((k for k, c in self.remaining.items() if c), default=0)

    def push(self, x: int, y: int) -> bool:
        if self.used[y]:
            return False
        h = self.head[x]
        chain = self.length[h]
        if y == h:
            if not self.remaining.get(chain):
                return False
            self.remaining[chain] -= 1
            self.undo.append(("close", y, chain))
        else:
            merged = chain + self.length[y]
            if merged > self.longest():
                return False
            t = self.tail[y]
            self.tail[h], self.head[t], self.length[h] = t, h, merged
            self.undo.append(("link", y, (x, h, t, chain)))
        self.used[y] = True
        return True

    def pop(self):
        kind, y, data = self.undo.pop()
        self.used[y] = False
        if kind == "close":
            self.remaining[data] += 1
        else:
            x, h, t, chain = data
            self.tail[h], self.head[t], self.length[h] = x, y, chain


def iter_class(parts: Sequence[int], first_image: Optional[int] = None) -> Iterator[Perm]:
    """Every permutation of cycle type ``parts``, in lexicographic order of images.

    Images are assigned point by point through ``CycleChains``. When
    ``first_image`` is given only permutations sending 0 there are produced.
    """
    d = sum(parts)
    chains = CycleChains(parts)
    images = [-1] * d

    def assign(x: int) -> Iterator[Perm]:
        if x == d:
            yield tuple(images)
            return
        candidates = range(d) if (x or first_image is None) else (first_image,)
        for y in candidates:
            if not chains.push(x, y):
                continue
            images[x] = y
            yield from assign(x + 1)
            images[x] = -1
            chains.pop()

    yield from assign(0)


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.components = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.components -= 1
        return True


def is_transitive(perms: Iterable[Sequence[int]], d: int) -> bool:
    uf = UnionFind(d)
    for p in perms:
        for i, x in enumerate(p):
            uf.union(i, x)
            if uf.components == 1:
                return True
    return uf.components == 1


def orbits(perms: Iterable[Sequence[int]], points: int) -> List[List[int]]:
    uf = UnionFind(points)
    for p in perms:
        for i, x in enumerate(p):
            uf.union(i, x)
    groups: Dict[int, List[int]] = {}
    for x in range(points):
        groups.setdefault(uf.find(x), []).append(x)
    return sorted(groups.values())
