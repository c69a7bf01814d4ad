import json

import numpy as np
import pytest

from semihilbert import catalog as cat
from semihilbert import io, suite
from semihilbert.errors import InvalidConfig, InvalidInput, IoError
from semihilbert.structure import make_weight


def small(**kw):
    args = dict(dims=(2, 3), trials=3, seed=11, extras=False)
    args.update(kw)
    return suite.run_suite(**args)


def test_parse_helpers():
    assert suite.parse_range("2..6") == [2, 3, 4, 5, 6]
    assert suite.parse_range("1,3") == [1, 3]
    with pytest.raises(InvalidConfig):
        suite.parse_range("a..b")
    assert len(suite.grid_pairs()) == 20
    assert suite.grid_pairs((3,), [1, 5]) == [(3, 1)]


def test_empty_case_subset():
    with pytest.raises(InvalidConfig):
        suite.run_suite(cases=[])
    with pytest.raises(InvalidConfig):
        suite.run_suite(cases="")


def test_selfadjoint_case_residuals():
    rep = small(cases=["C03"])
    res = rep["cases"]["C03"]
    assert res["violations"] == 0 and res["evaluated"] == 15
    assert res["max_residual"] <= 1e-7


def test_report_deterministic_except_wall_time():
    a, b = small(cases="C01,C28"), small(cases="C01,C28")
    assert a.pop("wall_time") is not None
    b.pop("wall_time")
    assert io.dumps(a) == io.dumps(b)


def test_trial_streams_independent_of_case_subset():
    a = small(cases=["C06"])
    b = small(cases=["C01", "C06"])
    assert a["cases"]["C06"] == b["cases"]["C06"]


def test_violations_are_archived():
    rep = suite.run_suite(cases=["C10"], dims=(3,), trials=2, seed=1, extras=False)
    res = rep["cases"]["C10"]
    # at rank 1 the compression is a positive scalar and the fact holds
    assert res["evaluated"] == 6 and res["violations"] == 4
    assert all("rank=1" not in e["digest"] for e in res["archive"])
    entry = res["archive"][0]
    A, ops, _ = io.bundle_from_json(entry["operands"])
    replay = cat.evaluate("C10", cat.Operands(make_weight(A), ops))
    assert [r.label for r in replay if not r.certified] == ["alpha=1"]


def test_extras_sections():
    rep = suite.run_suite(cases=["C02"], dims=(2, 3), trials=5, seed=3)
    ts = rep["triple_sharp"]
    assert ts["singular"]["equals_sharp"] == ts["singular"]["trials"]
    assert ts["invertible"]["equals_sharp"] == ts["invertible"]["trials"]
    gs = rep["generator_soundness"]
    for cls in ("general_in_BA", "a_selfadjoint", "a_positive", "unit_a_vector"):
        assert gs[cls]["rate"] == 1.0
    assert gs["plain_gaussian_singular_A"]["accepted"] == 0


def test_csv_rows():
    rep = small(cases="C01,C04")
    lines = suite.report_to_csv(rep).strip().splitlines()
    assert lines[0].startswith("case,part,kind")
    assert len(lines) == 1 + 2 + 2


def test_compare_c04():
    res = suite.compare("C04", "classic2", dims=(2, 3), trials=5, seed=2)
    assert res["exceed"] == 0 and res["max"] <= 1 + 1e-9


def test_search_probes_reach_extremes():
    up = suite.search_extremal("C01-upper", dim=2, iters=1500, seed=4)
    assert up.ratio >= 0.999 and up.label == "upper"
    low = suite.search_extremal("C01-lower", dim=2, iters=1500, seed=4)
    assert low.ratio >= 0.99
    A, ops, _ = io.bundle_from_json(low.witness)
    again = cat.evaluate("C01", cat.Operands(make_weight(A), ops))
    assert next(r for r in again if r.label == "lower").ratio == pytest.approx(low.ratio, rel=1e-9)


def test_search_unknown_part():
    with pytest.raises(InvalidConfig):
        suite.search_extremal("C01-middle", iters=5)


# -- io ---------------------------------------------------------------------------


def test_matrix_json_round_trip(tmp_path):
    M = np.array([[1 + 2j, -3], [0.5j, 4]])
    obj = io.matrix_to_json(M)
    assert obj == {"rows": 2, "cols": 2, "data": [[1, 2], [-3, 0], [0, 0.5], [4, 0]]}
    np.testing.assert_array_equal(io.matrix_from_json(obj), M)
    p = tmp_path / "m.json"
    io.write_json(p, obj)
    np.testing.assert_array_equal(io.load_matrix(p), M)


def test_matrix_json_rejections():
    with pytest.raises(InvalidInput):
        io.matrix_from_json({"rows": 2, "cols": 2, "data": [[1, 0]]})
    with pytest.raises(InvalidInput):
        io.matrix_from_json({"rows": 1, "cols": 1, "data": [[float("nan"), 0]]})
    with pytest.raises(InvalidInput):
        io.matrix_from_json({"rows": 1, "cols": 1, "data": [1.0]})
    with pytest.raises(IoError):
        io.load_matrix("/nonexistent/file.json")


def test_bundle_round_trip():
    A = np.diag([1.0, 0.0])
    obj = io.bundle_to_json(A, {"T": np.eye(2)}, {"x": np.array([1j, 2])})
    json.dumps(obj)
    A2, ops, vecs = io.bundle_from_json(obj)
    np.testing.assert_array_equal(A2, A)
    np.testing.assert_array_equal(vecs["x"], [1j, 2])
