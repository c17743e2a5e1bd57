import pytest

from hurwitz.reports import ReportStore, SweepReport, SweepRow, run_sweep, sweep_data

from conftest import sphere


def shapes(rows):
    return {
        (r.datum.cover.genus, r.datum.degree, tuple(sorted(p.parts for p in r.datum.partitions)))
        for r in rows
    }


def test_sweep_row_agreement(odd_sphere_datum):
    assert SweepRow(odd_sphere_datum, "realizable", "thm_1_1", "realizable").agrees is True
    assert SweepRow(odd_sphere_datum, "exceptional", "thm_1_1", "realizable").agrees is False
    assert SweepRow(odd_sphere_datum, "outside_scope", None, "realizable").agrees is None
    assert SweepRow(odd_sphere_datum, "realizable", "thm_1_1", "undecided").agrees is None


def test_small_sphere_sweep():
    report = run_sweep("d-2-2", 5, 0)
    assert report.rows
    assert report.disagreements == []
    assert report.exit_code == 0
    assert shapes(report.exceptional()) == {(0, 4, ((2, 2), (2, 2), (3, 1)))}
    by_degree = report.exceptional_by_degree()
    assert by_degree["g0/d5"] == 0
    assert by_degree["g0/d4"] == len(report.exceptional())
    assert all(r.oracle == "unrealizable" for r in report.exceptional())


def test_rows_are_sorted_and_unique():
    report = run_sweep("all", 4, 0)
    keys = [r.sort_key for r in report.rows]
    assert keys == sorted(keys)
    assert len({str(r.datum) for r in report.rows}) == len(report.rows)


def test_budget_exhaustion_leaves_rows_undecided():
    report = run_sweep("d-1-1", 4, 0, budget=0)
    assert report.undecided
    assert report.disagreements == []
    assert report.exit_code == 3


def test_parallel_sweep_matches_serial():
    serial = run_sweep("d-1-1", 5, 0)
    parallel = run_sweep("d-1-1", 5, 0, workers=2)
    assert serial.to_json() == parallel.to_json()


def test_unknown_family():
    with pytest.raises(ValueError):
        list(sweep_data("d-3-3", 5, 0))


def test_report_json_summary():
    row = SweepRow(sphere(4, (2, 2), (2, 2), (3, 1)), "exceptional", "thm_1_1", "realizable")
    report = SweepReport("d-2-2", 4, 0, [row])
    payload = report.to_json()
    assert payload["summary"] == {
        "data": 1,
        "disagreements": 1,
        "undecided": 0,
        "exceptional_by_degree": {"g0/d4": 1},
    }
    assert payload["rows"][0]["label"] == "(S,S,3,4,(2,2),(2,2),(3,1))"
    assert report.exit_code == 1


def test_report_store(tmp_path):
    store = ReportStore(str(tmp_path / "reports"))
    assert store.list_reports() == []
    report = run_sweep("d-1-1", 4, 0)
    path = store.save_sweep(report)
    assert path.endswith("sweep-d-1-1-d4.json")
    assert store.list_reports() == [path]
    loaded = store.load_sweep(path)
    assert loaded["family"] == "d-1-1"
    assert loaded == report.to_json()
    assert store.load_sweep(str(tmp_path / "missing.json")) is None


def test_saved_reports_are_reproducible(tmp_path):
    first = run_sweep("d-2-2", 5, 0)
    second = run_sweep("d-2-2", 5, 0)
    with open(ReportStore(str(tmp_path / "a")).save_sweep(first), "rb") as handle:
        a = handle.read()
    with open(ReportStore(str(tmp_path / "b")).save_sweep(second), "rb") as handle:
        b = handle.read()
    assert a == b
    assert b"seconds" not in a


def test_timings_only_on_request():
    report = run_sweep("d-1-1", 4, 0)
    assert all("seconds" not in row for row in report.to_json()["rows"])
    timed_rows = report.to_json(timings=True)["rows"]
    assert all(row["seconds"] >= 0 for row in timed_rows)


@pytest.fixture(scope="module")
def higher_genus_sweep():
    return run_sweep("d-2-2", 9, 2)


@pytest.mark.slow
def test_sphere_sweep_exceptions():
    report = run_sweep("d-2-2", 10, 0)
    assert report.disagreements == []
    assert report.undecided == []
    assert shapes(report.exceptional()) == {
        (0, 4, ((2, 2), (2, 2), (3, 1))),
        (0, 6, ((2, 2, 2), (2, 2, 2), (4, 2))),
        (0, 6, ((2, 2, 2), (4, 1, 1), (4, 2))),
        (0, 8, ((2, 2, 2, 2), (2, 2, 2, 2), (6, 2))),
        (0, 8, ((2, 2, 2, 2), (5, 1, 1, 1), (6, 2))),
        (0, 10, ((2, 2, 2, 2, 2), (2, 2, 2, 2, 2), (8, 2))),
        (0, 10, ((2, 2, 2, 2, 2), (6, 1, 1, 1, 1), (8, 2))),
    }
    odd = [r for r in report.exceptional() if r.datum.degree % 2]
    assert odd == []


@pytest.mark.slow
def test_torus_sweep_has_a_single_exception(higher_genus_sweep):
    assert higher_genus_sweep.disagreements == []
    assert higher_genus_sweep.undecided == []
    torus_rows = [r for r in higher_genus_sweep.exceptional() if r.datum.cover.genus == 1]
    assert shapes(torus_rows) == {(1, 6, ((3, 3), (3, 3), (4, 2)))}
    assert max(r.datum.degree for r in higher_genus_sweep.rows if r.datum.cover.genus == 1) == 9


@pytest.mark.slow
def test_genus_two_has_no_exceptions(higher_genus_sweep):
    genus_two = [r for r in higher_genus_sweep.rows if r.datum.cover.genus == 2]
    assert genus_two
    assert max(r.datum.degree for r in genus_two) == 9
    assert not [r for r in genus_two if r.classifier == "exceptional"]
    assert all(r.oracle == "realizable" for r in genus_two)


@pytest.mark.slow
def test_near_full_cycle_sweep():
    report = run_sweep("d-1-1", 8, 0)
    assert report.disagreements == []
    assert report.undecided == []
    assert shapes(report.exceptional()) == {
        (0, 4, ((2, 2), (2, 2), (3, 1))),
        (0, 6, ((2, 2, 2), (2, 2, 2), (5, 1))),
        (0, 8, ((2, 2, 2, 2), (2, 2, 2, 2), (7, 1))),
    }
    assert all(r.oracle == "realizable" for r in report.rows if r.classifier == "realizable")
