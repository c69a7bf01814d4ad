import math

import numpy as np
import pytest

from semihilbert import catalog as cat
from semihilbert import structure as st
from semihilbert import suite
from semihilbert.errors import InvalidConfig, SkippedHypothesis

I2 = np.eye(2)
N2 = np.array([[0, 1], [0, 0]], dtype=complex)
# positive-factor product counterexample at A = I
T_POS = np.diag([1.0, 0.0]).astype(complex)
S_NIL = np.array([[1, 1], [-1, -1]], dtype=complex)


def operands(A, **ops):
    return cat.Operands(st.make_weight(A), ops)


def part(reports, label):
    return next(r for r in reports if r.label == label)


def test_list_cases_complete_and_unique():
    cases = cat.list_cases()
    assert len(cases) == 29
    assert [c.id for c in cases] == [f"C{i:02d}" for i in range(1, 30)]
    assert len({c.id for c in cases}) == 29
    assert set(cat.EQUALITY_CASES) | set(cat.INEQUALITY_CASES) == {c.id for c in cases}


def test_signatures_match_dispatch():
    # every case evaluates on operands drawn from its own signature
    for case in cat.list_cases():
        ops = suite.draw_operands(case, 5, 3, 2, 0)
        assert set(ops.operators) == {r for r, _ in case.operators}
        assert set(ops.vectors) == {r for r, _ in case.vectors}
        reports = cat.evaluate(case.id, ops)
        assert reports and all(r.case == case.id for r in reports)


def test_c06_example():
    (r,) = cat.evaluate("C06", operands(I2, T=N2, S=N2))
    assert r.lhs == pytest.approx(0.0, abs=1e-15)
    assert r.rhs == pytest.approx(0.25, abs=1e-12)
    assert r.slack == pytest.approx(0.25, abs=1e-12)
    assert r.certified


def test_c01_lower_attained_by_nilpotent():
    reps = cat.evaluate("C01", operands(I2, T=N2))
    lower = part(reps, "lower")
    assert lower.lhs == pytest.approx(0.5) and lower.rhs == pytest.approx(0.5, abs=1e-12)
    assert lower.certified and lower.rel_slack < cat.NEAR_TIGHT


def test_c24_example():
    (r,) = cat.evaluate("C24", operands(I2, T=I2, S=I2))
    assert r.lhs == pytest.approx(1.0, abs=1e-12) and r.rhs == pytest.approx(1.0)
    assert r.certified


def test_hypothesis_failures_are_skips():
    with pytest.raises(SkippedHypothesis):
        cat.evaluate("C03", operands(I2, T=N2))
    with pytest.raises(SkippedHypothesis):
        cat.evaluate("C09", operands(I2, T=-I2, S=N2))
    with pytest.raises(SkippedHypothesis):
        cat.evaluate("C01", operands(np.diag([1.0, 0.0]), T=N2))
    with pytest.raises(SkippedHypothesis):
        cat.evaluate("C04", operands(I2, T=N2))


def test_unknown_case():
    with pytest.raises(InvalidConfig):
        cat.get_case("C30")


def test_equality_tolerance_rule():
    r = cat._report("X", "p", "eq", cat.Q(1.0 + 5e-8), cat.Q(1.0), "")
    assert r.certified
    r = cat._report("X", "p", "eq", cat.Q(1.0 + 5e-7), cat.Q(1.0), "")
    assert not r.certified


def test_certified_comparison_uses_halfwidths():
    assert cat._report("X", "p", "le", cat.Q(1.01, 0.006), cat.Q(1.0, 0.005), "").certified
    assert not cat._report("X", "p", "le", cat.Q(1.02, 0.006), cat.Q(1.0, 0.005), "").certified


def test_error_propagation():
    a, b = cat.Q(2.0, 0.1), cat.Q(3.0, 0.2)
    assert (a + b).e == pytest.approx(0.3)
    assert (a - b).v == -1.0 and (a - b).e == pytest.approx(0.3)
    prod = a * b
    assert prod.v == 6.0
    assert prod.e >= abs(2.1 * 3.2 - 6.0) - 1e-12
    sq = cat.Q(4.0, 0.5).sqrt()
    assert sq.v == 2.0 and sq.e >= 2.0 - math.sqrt(3.5)
    cube = a ** 3
    assert cube.e == pytest.approx(2.1**3 - 8.0)


def test_chain_parts_present():
    ops = suite.draw_operands("C18", 1, 3, 3, 0)
    labels = [r.label for r in cat.evaluate("C18", ops)]
    assert labels == ["first", "chain"]
    for cid in ("C14", "C17"):
        reps = cat.evaluate(cid, suite.draw_operands(cid, 1, 4, 2, 0))
        assert all(r.certified for r in reps)


def test_power_sweep_parts():
    for cid in ("C19", "C21", "C22"):
        reps = cat.evaluate(cid, suite.draw_operands(cid, 2, 4, 3, 1))
        assert [r.label for r in reps] == [f"k={k},n={n}" for k, n in cat.POWER_SWEEP]
        assert all(r.certified for r in reps)


def test_tightness_examples():
    assert cat.tightness("C04", "classic2", operands(I2, T=I2, S=I2)) == pytest.approx(1.0)
    rng = np.random.default_rng(4)
    for _ in range(20):
        G = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        S = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        ops = operands(np.eye(3), T=G @ G.conj().T, S=S)
        assert cat.tightness("C09", "three_halves", ops) == pytest.approx(2 / 3, rel=1e-12)


def test_tightness_c04_random():
    for t in range(50):
        ops = suite.draw_operands("C04", 3, 4, 2, t)
        assert cat.tightness("C04", "classic2", ops) <= 1 + 1e-9


def test_positive_factor_counterexample():
    # omega(TS) = (1 + sqrt 2)/2 while ||T|| omega(S) = 1
    reps = cat.evaluate("C09", operands(I2, T=T_POS, S=S_NIL))
    ts = part(reps, "TS")
    assert ts.lhs == pytest.approx((1 + math.sqrt(2)) / 2, rel=1e-10)
    assert ts.rhs == pytest.approx(1.0, rel=1e-10)
    assert not ts.certified
    # the interpolated family is still valid at alpha = 1/2
    ops = operands(I2, T=T_POS, S=S_NIL)
    assert cat.positive_product_family(ops, 0.5).certified
    assert not cat.positive_product_family(ops, 1.0).certified


def test_proof_fact_breaks_above_one_half():
    reps = cat.evaluate("C10", operands(I2, T=T_POS))
    assert [r.certified for r in reps] == [True, True, True, False]
    assert part(reps, "alpha=1").lhs == pytest.approx(1.0)
    assert part(reps, "alpha=1").rhs == pytest.approx(0.0)


def test_to_dict_round_trip():
    (r,) = cat.evaluate("C06", operands(I2, T=N2, S=N2))
    d = r.to_dict()
    assert cat.BoundReport(**d) == r
