import networkx as nx
import pytest

from hurwitz.branch_data import SurfaceClass, enumerate_compatible
from hurwitz.dessins import (
    BLACK, WHITE, Dessin, InvalidDessinError, UnsupportedDatumError, count_dessins,
    enumerate_dessins, face_lengths, genus, torus_data_without_ones,
)
from hurwitz.oracle import count_classes, decide, verify
from hurwitz.permutations import conjugate

from conftest import genus as genus_datum
from conftest import sphere, torus

# black vertices {0,1},{2,3},{4,5}; white vertices {1,2},{3,4},{5,0}
HEXAGON = Dessin.from_rotations((1, 0, 3, 2, 5, 4), (5, 2, 1, 4, 3, 0))


def _relabel(dessin, g):
    colors = [0] * len(dessin.colors)
    for x, c in enumerate(dessin.colors):
        colors[g[x]] = c
    return Dessin(conjugate(dessin.edge_pairing, g), conjugate(dessin.rotation, g), tuple(colors))


def test_single_edge():
    edge = Dessin.from_rotations((0,), (0,))
    assert face_lengths(edge) == (2,)
    assert genus(edge) == 0
    assert edge.to_constellation().perms == ((0,), (0,), (0,))


def test_hexagon_faces_and_datum():
    assert HEXAGON.valences(BLACK) == (2, 2, 2)
    assert HEXAGON.valences(WHITE) == (2, 2, 2)
    assert face_lengths(HEXAGON) == (6, 6)
    assert genus(HEXAGON) == 0
    assert HEXAGON.datum() == sphere(6, (2, 2, 2), (2, 2, 2), (3, 3))
    assert sum(face_lengths(HEXAGON)) == 2 * HEXAGON.edge_count


def test_hexagon_constellation_verifies():
    constellation = HEXAGON.to_constellation()
    assert constellation.cycle_types() == [(2, 2, 2), (2, 2, 2), (3, 3)]
    assert verify(constellation, HEXAGON.datum())
    assert Dessin.from_constellation(constellation) == HEXAGON


def test_torus_dessin_genus():
    dessin = Dessin.from_rotations((1, 2, 0), (1, 2, 0))
    assert len(dessin.vertices()) == 2
    assert len(dessin.faces()) == 1
    assert genus(dessin) == 1
    assert dessin.datum() == torus(3, (3,), (3,), (3,))


def test_canonical_form_invariant_under_relabeling():
    g = (3, 7, 0, 11, 5, 2, 9, 1, 10, 4, 6, 8)
    relabeled = _relabel(HEXAGON, g)
    assert relabeled.is_isomorphic(HEXAGON)
    assert genus(relabeled) == genus(HEXAGON)
    assert not HEXAGON.is_isomorphic(Dessin.from_rotations((1, 2, 3, 4, 5, 0), (1, 0, 3, 2, 5, 4)))


@pytest.mark.parametrize("pairing, rotation, colors", [
    ((0, 1), (0, 1), (1, 2)),
    ((1, 0), (0, 1), (1, 1)),
    ((1, 0, 3, 2), (0, 1, 2, 3), (1, 2, 1, 2)),
    ((1, 0, 3, 2), (2, 3, 0, 1), (1, 2, 2, 1)),
    ((1, 0, 2), (0, 1, 2), (1, 2, 1)),
])
def test_invalid_dessins(pairing, rotation, colors):
    with pytest.raises(InvalidDessinError):
        Dessin(pairing, rotation, colors)


def test_json_round_trip():
    assert Dessin.from_json(HEXAGON.to_json()) == HEXAGON
    with pytest.raises(InvalidDessinError):
        Dessin.from_json({"rotation": [0]})


def test_graph_and_dot():
    graph = HEXAGON.to_graph()
    assert graph.number_of_nodes() == 6
    assert graph.number_of_edges() == 6
    assert nx.is_bipartite(graph)
    assert nx.is_connected(graph)
    assert sorted(c for _, c in graph.nodes(data="color")) == [BLACK] * 3 + [WHITE] * 3
    dot = HEXAGON.to_dot("hexagon")
    assert dot.startswith("graph hexagon {")
    assert dot.count("--") == 6


def test_torus_exception_has_no_dessin(torus_exception):
    assert list(enumerate_dessins(torus_exception)) == []
    assert count_dessins(torus_exception) == 0


def test_unsupported_data():
    with pytest.raises(UnsupportedDatumError):
        list(enumerate_dessins(sphere(2, (2,), (2,))))


def test_enumerated_dessins_realize_the_datum(odd_sphere_datum):
    dessins = list(enumerate_dessins(odd_sphere_datum))
    assert dessins
    for dessin in dessins:
        assert dessin.datum() == odd_sphere_datum
        assert verify(dessin.to_constellation(), odd_sphere_datum)
    forms = {d.canonical_form() for d in dessins}
    assert len(forms) == len(dessins)


@pytest.mark.parametrize("datum", [
    sphere(5, (3, 2), (2, 2, 1), (4, 1)),
    sphere(4, (3, 1), (3, 1), (2, 2)),
    sphere(4, (2, 2), (2, 2), (3, 1)),
    sphere(6, (4, 2), (3, 3), (2, 2, 1, 1)),
    torus(4, (4,), (4,), (2, 2)),
    torus(6, (4, 2), (3, 3), (3, 3)),
])
def test_dessin_count_matches_oracle(datum):
    assert count_dessins(datum) == count_classes(datum)
    assert (count_dessins(datum) > 0) == decide(datum).realizable


def test_parallel_enumeration_matches_serial(odd_sphere_datum):
    serial = {d.canonical_form() for d in enumerate_dessins(odd_sphere_datum)}
    parallel = {d.canonical_form() for d in enumerate_dessins(odd_sphere_datum, workers=2)}
    assert serial == parallel


def test_genus_two_dessin():
    datum = genus_datum(2, 9, (7, 2), (6, 3), (3, 3, 3))
    dessin = next(enumerate_dessins(datum))
    assert genus(dessin) == 2
    assert face_lengths(dessin) == (6, 6, 6)


def test_torus_data_without_ones_have_dessins():
    data = torus_data_without_ones(7)
    assert data
    for datum in data:
        assert all(part >= 2 for p in datum.partitions[1:] for part in p)
        assert next(enumerate_dessins(datum), None) is not None


@pytest.mark.slow
def test_degree_twelve_genus_two_dessin():
    datum = genus_datum(2, 12, (10, 2), (3, 3, 3, 3), (3, 3, 3, 3))
    assert genus(next(enumerate_dessins(datum))) == 2


def small_data():
    for g in range(3):
        for d in range(2, 7):
            yield from enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.orientable_genus(g), 3, d)


@pytest.mark.slow
@pytest.mark.parametrize("datum", list(small_data()), ids=str)
def test_every_small_dessin_count_matches_oracle(datum):
    assert count_dessins(datum) == count_classes(datum)
