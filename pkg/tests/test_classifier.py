import pytest

from hurwitz.branch_data import BranchDatum, Partition, SurfaceClass
from hurwitz.classifier import (
    IncompatibleDatumError, Rule, Verdict, brute_force_non_refining_partitions, classify,
    half_datum, non_refining_partitions,
)

from conftest import genus, sphere


def test_sphere_first_family(sphere_first_family):
    result = classify(sphere_first_family)
    assert result.exceptional
    assert (result.rule, result.family) == (Rule.SPHERE_D_MINUS_2, 1)


def test_sphere_second_family(sphere_second_family):
    result = classify(sphere_second_family)
    assert result.exceptional
    assert (result.rule, result.family) == (Rule.SPHERE_D_MINUS_2, 2)
    assert classify(sphere(6, (4, 2), (2, 2, 2), (4, 1, 1))).exceptional


def test_torus_exception(torus_exception):
    result = classify(torus_exception)
    assert result.decision is Verdict.EXCEPTIONAL
    assert str(result) == "exceptional (thm_1_2)"
    assert result.to_json() == {"decision": "exceptional", "rule": "thm_1_2", "family": None}


def test_other_torus_data_realizable():
    result = classify(BranchDatum.sphere_cover(1, 6, (4, 2), (4, 2), (3, 3)))
    assert result.realizable
    assert result.rule is Rule.TORUS_D_MINUS_2


def test_full_cycle_decides_first():
    result = classify(genus(2, 6, (4, 2), (6,), (6,)))
    assert result.realizable
    assert result.rule is Rule.FULL_CYCLE


def test_high_genus_always_realizable():
    result = classify(genus(2, 8, (6, 2), (4, 4), (5, 3)))
    assert result.realizable
    assert result.rule is Rule.HIGH_GENUS_D_MINUS_2


def test_near_full_cycle_families():
    first = classify(sphere(4, (3, 1), (2, 2), (2, 2)))
    assert first.exceptional
    assert (first.rule, first.family) == (Rule.NEAR_FULL_CYCLE, 1)

    second = classify(sphere(6, (5, 1), (2, 2, 2), (2, 2, 2)))
    assert (second.decision, second.family) == (Verdict.EXCEPTIONAL, 2)

    assert classify(sphere(5, (4, 1), (2, 2, 1), (3, 2))).realizable
    assert classify(sphere(6, (5, 1), (3, 3), (2, 2, 1, 1))).realizable


def test_odd_degree_sphere_realizable(odd_sphere_datum):
    result = classify(odd_sphere_datum)
    assert result.realizable
    assert result.rule is Rule.SPHERE_D_MINUS_2


def test_slot_one_rule_is_reported():
    assert classify(sphere(4, (2, 2), (3, 1), (2, 2))).rule is Rule.SPHERE_D_MINUS_2
    assert classify(sphere(4, (3, 1), (2, 2), (2, 2))).rule is Rule.NEAR_FULL_CYCLE


def test_outside_scope():
    over_plane = BranchDatum(SurfaceClass.sphere(), SurfaceClass.projective_plane(), 2, ())
    assert classify(over_plane).decision is Verdict.OUTSIDE_SCOPE
    assert classify(sphere(4, (2, 2), (2, 2), (2, 1, 1), (2, 1, 1))).decision is Verdict.OUTSIDE_SCOPE
    assert str(classify(over_plane)) == "outside_scope"


def test_incompatible_datum_raises():
    with pytest.raises(IncompatibleDatumError) as info:
        classify(BranchDatum(SurfaceClass.sphere(), SurfaceClass.sphere(), 2, ()))
    assert info.value.failed == [1]


def test_non_refining_partitions_examples():
    assert non_refining_partitions(3) == [Partition.of(4, 1, 1), Partition.of(2, 2, 2)]
    assert non_refining_partitions(4) == [Partition.of(5, 1, 1, 1)]
    assert non_refining_partitions(1) == [Partition.of(2)]
    with pytest.raises(ValueError):
        non_refining_partitions(0)


@pytest.mark.parametrize("k", range(1, 13))
def test_non_refining_partitions_match_brute_force(k):
    assert non_refining_partitions(k) == brute_force_non_refining_partitions(k)


def test_half_datum():
    half = half_datum(sphere(8, (6, 2), (2, 2, 2, 2), (3, 3, 1, 1)))
    assert half == sphere(4, (3, 1), (1, 1, 1, 1), (3, 1), (3, 1))

    assert half_datum(sphere(8, (6, 2), (3, 3, 1, 1), (2, 2, 2, 2))) is None
    assert half_datum(sphere(5, (3, 2), (2, 2, 1), (4, 1))) is None
