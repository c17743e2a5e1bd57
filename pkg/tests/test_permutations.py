from math import factorial

from sympy.combinatorics import Permutation

from hurwitz.permutations import (
    CycleChains, UnionFind, canonical_representative, class_size, compose, conjugate,
    cycle_notation, cycle_type, cycles, from_cycles, inverse, is_transitive, iter_class, orbits,
    product,
)


def test_compose_matches_sympy_order():
    p = (1, 2, 0, 3)
    q = (0, 1, 3, 2)
    expected = Permutation(list(p)) * Permutation(list(q))
    assert list(compose(p, q)) == expected.array_form


def test_inverse_and_product():
    p = (2, 0, 3, 1)
    assert compose(p, inverse(p)) == (0, 1, 2, 3)
    assert product([p, p, p, p], 4) == (0, 1, 2, 3)


def test_conjugate_relabels_cycles():
    p = from_cycles([[0, 1, 2]], 4)
    g = (3, 2, 1, 0)
    assert conjugate(p, g) == (0, 3, 1, 2)
    assert cycles(conjugate(p, g)) == [[0], [1, 3, 2]]


def test_cycle_notation():
    assert cycle_notation((1, 2, 0)) == "(0 1 2)"
    assert cycle_notation((2, 3, 0, 1)) == "(0 2)(1 3)"
    assert cycle_notation((0, 1)) == "()"
    assert cycle_notation((1, 0), offset=1) == "(1 2)"


def test_canonical_representative_blocks():
    assert canonical_representative((3, 2)) == (1, 2, 0, 4, 3)
    assert cycle_type(canonical_representative((2, 2, 1))) == (2, 2, 1)


def test_class_size():
    assert class_size((1, 1, 1)) == 1
    assert class_size((2, 1)) == 3
    assert class_size((4,)) == factorial(3)
    assert class_size((2, 2)) == 3


def test_iter_class_counts_and_order():
    for parts in [(3, 1), (2, 2), (2, 1, 1), (4,), (3, 2, 1)]:
        members = list(iter_class(parts))
        assert len(members) == class_size(parts)
        assert len(set(members)) == len(members)
        assert members == sorted(members)
        assert all(cycle_type(p) == tuple(sorted(parts, reverse=True)) for p in members)


def test_iter_class_first_image_shards_partition_the_class():
    parts = (3, 2)
    total = sum(len(list(iter_class(parts, y))) for y in range(5))
    assert total == class_size(parts)
    assert all(p[0] == 2 for p in iter_class(parts, 2))


def test_cycle_chains_push_and_pop():
    chains = CycleChains((2, 1))
    assert chains.push(0, 1)
    assert not chains.push(1, 1)
    assert not chains.push(1, 2)
    assert chains.push(1, 0)
    assert chains.longest() == 1
    assert chains.push(2, 2)
    assert chains.longest() == 0

    chains.pop()
    chains.pop()
    assert chains.longest() == 2
    chains.pop()
    assert chains.push(0, 0)
    assert not chains.push(1, 1)
    assert chains.push(1, 2)


def test_union_find():
    uf = UnionFind(4)
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    uf.union(2, 3)
    assert uf.components == 2
    assert uf.find(0) == uf.find(1) != uf.find(2)


def test_transitivity_and_orbits():
    assert is_transitive([(1, 0, 2), (0, 2, 1)], 3)
    assert not is_transitive([(1, 0, 2, 3), (1, 0, 3, 2)], 4)
    assert orbits([(1, 0, 2, 3), (1, 0, 3, 2)], 4) == [[0, 1], [2, 3]]
