import json

import pytest

from hurwitz.branch_data import (
    BranchDataError, BranchDatum, DegreeMismatchError, Partition, SurfaceClass,
    all_partitions, check_compatibility, enumerate_compatible, refines,
)

from conftest import genus, sphere, torus


def test_partition_sorts_and_validates():
    assert Partition.of(1, 3, 2).parts == (3, 2, 1)
    assert Partition.of(4).is_full_cycle()
    assert Partition.of(2, 2, 1).count(2) == 2
    with pytest.raises(BranchDataError):
        Partition(())
    with pytest.raises(BranchDataError):
        Partition.of(2, 0)


def test_partition_parse_is_strict():
    assert Partition.parse([3, 1], degree=4) == Partition.of(3, 1)
    with pytest.raises(BranchDataError) as info:
        Partition.parse([1, 3], index=2)
    assert info.value.index == 2
    with pytest.raises(BranchDataError):
        Partition.parse([3, 2], degree=4)
    with pytest.raises(BranchDataError):
        Partition.parse([True, 1])


def test_surface_euler_characteristic():
    assert SurfaceClass.sphere().euler_characteristic == 2
    assert SurfaceClass.torus().euler_characteristic == 0
    assert SurfaceClass.orientable_genus(2).euler_characteristic == -2
    assert SurfaceClass.projective_plane().euler_characteristic == 1
    with pytest.raises(BranchDataError):
        SurfaceClass(False, 0)


def test_datum_derived_fields(odd_sphere_datum):
    assert odd_sphere_datum.n == 3
    assert odd_sphere_datum.d == 5
    assert odd_sphere_datum.n_tilde == 7
    assert str(odd_sphere_datum) == "(S,S,3,5,(3,2),(2,2,1),(4,1))"


def test_datum_rejects_degree_mismatch():
    with pytest.raises(BranchDataError) as info:
        BranchDatum(SurfaceClass.sphere(), SurfaceClass.sphere(), 4, (Partition.of(2, 2), Partition.of(2, 1)))
    assert info.value.index == 1


def test_datum_json_round_trip(torus_exception):
    raw = json.dumps(torus_exception.to_json())
    assert BranchDatum.from_json(raw) == torus_exception


@pytest.mark.parametrize("raw", [
    "not json",
    "[1, 2]",
    '{"degree": 4, "partitions": [[3, 2]]}',
    '{"degree": 4, "n": 2, "partitions": [[4]]}',
    '{"degree": "4", "partitions": []}',
])
def test_datum_from_json_rejects_malformed(raw):
    with pytest.raises(BranchDataError):
        BranchDatum.from_json(raw)


def test_helpers_reorder_and_canonical(odd_sphere_datum):
    swapped = odd_sphere_datum.reordered([0, 2, 1])
    assert swapped.partitions[1] == Partition.of(4, 1)
    assert swapped.canonical().partitions == (Partition.of(4, 1), Partition.of(3, 2), Partition.of(2, 2, 1))


def test_exceptional_data_are_compatible(sphere_second_family, torus_exception, odd_sphere_datum):
    for datum in (sphere_second_family, torus_exception, odd_sphere_datum):
        assert check_compatibility(datum).compatible


def test_unbranched_double_cover_fails_condition_one():
    datum = BranchDatum(SurfaceClass.sphere(), SurfaceClass.sphere(), 2, ())
    report = check_compatibility(datum)
    assert not report.compatible
    assert report.failed == [1]
    assert [c["condition"] for c in report.to_json()["conditions"]] == [1, 2, 3, 4, 5]


def test_condition_two_parity():
    # n*d - n~ = 3*4 - 5 is odd
    datum = BranchDatum(
        SurfaceClass.orientable_genus(0), SurfaceClass.sphere(), 4,
        (Partition.of(4), Partition.of(3, 1), Partition.of(2, 2)),
    )
    assert 2 in check_compatibility(datum).failed


def test_orientable_base_needs_orientable_cover():
    datum = BranchDatum(SurfaceClass.projective_plane(), SurfaceClass.sphere(), 2, (Partition.of(2),))
    assert 3 in check_compatibility(datum).failed


def test_non_orientable_base_conditions():
    base = SurfaceClass.projective_plane()
    odd = BranchDatum(SurfaceClass.sphere(), base, 3, (Partition.of(3),))
    report = check_compatibility(odd)
    assert 4 in report.failed and 5 in report.failed

    double = BranchDatum(SurfaceClass.sphere(), base, 2, ())
    assert check_compatibility(double).compatible

    branched = BranchDatum(SurfaceClass.torus(), base, 2, (Partition.of(2), Partition.of(2)))
    report = check_compatibility(branched)
    assert report.failed == [5]


def test_refines():
    assert refines(Partition.of(2, 2, 1, 1), Partition.of(3, 3))
    assert not refines(Partition.of(4, 1, 1), Partition.of(3, 3))
    assert refines(Partition.of(5), Partition.of(5))
    assert Partition.of(1, 1, 1, 1).refines(Partition.of(2, 2))
    with pytest.raises(DegreeMismatchError):
        refines(Partition.of(3), Partition.of(2, 2))


def test_all_partitions():
    assert all_partitions(4) == [
        Partition.of(4), Partition.of(3, 1), Partition.of(2, 2), Partition.of(2, 1, 1), Partition.of(1, 1, 1, 1),
    ]
    assert len(all_partitions(8)) == 22


def test_enumerate_compatible_degree_four_filter():
    data = list(enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.sphere(), 3, 4, Partition.of(2, 2)))
    assert all(d.n_tilde == 6 for d in data)
    assert all(d.partitions[0] == Partition.of(2, 2) for d in data)
    assert sphere(4, (2, 2), (3, 1), (2, 2)) in data
    assert sphere(4, (2, 2), (4,), (2, 1, 1)) in data
    assert len(data) == len(set(data))


def test_enumerate_compatible_single_genus_two_datum():
    data = list(enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.orientable_genus(2), 3, 6, Partition.of(4, 2)))
    assert data == [genus(2, 6, (4, 2), (6,), (6,))]


def test_enumerate_compatible_empty_when_genus_is_wrong():
    assert list(enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.torus(), 0, 2)) == []


def test_enumerate_compatible_rejects_bad_filter():
    with pytest.raises(DegreeMismatchError):
        list(enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.torus(), 3, 6, Partition.of(3, 2)))


def test_torus_exception_enumerated():
    data = list(enumerate_compatible(SurfaceClass.sphere(), SurfaceClass.torus(), 3, 6, Partition.of(4, 2)))
    assert torus(6, (4, 2), (3, 3), (3, 3)) in data
