import numpy as np
import pytest

from semihilbert import ensembles as en
from semihilbert import structure as st
from semihilbert.block import BlockOperator, assemble, block_sharp_check, lift_weight
from semihilbert.errors import NotInBA
from semihilbert.linalg import sym2x2_nonneg_norm
from semihilbert.radii import a_numerical_radius, a_spectral_radius, op_seminorm

E00 = np.diag([1.0, 0.0])


def draws(count, seed=31):
    for i in range(count):
        rng = en.substream(seed, i)
        n = int(rng.integers(2, 6))
        r = int(rng.integers(1, n + 1))
        yield en.gen_weight(n, r, rng), rng


def test_lift_examples():
    L = lift_weight(st.make_weight(np.eye(2)))
    np.testing.assert_allclose(L.A, np.eye(4))
    L = lift_weight(st.make_weight(E00))
    np.testing.assert_allclose(L.A, np.diag([1.0, 0, 1, 0]))
    assert L.rank == 2


def test_lift_matches_direct_weight():
    for w, _ in draws(20):
        L = lift_weight(w)
        direct = st.make_weight(L.A)
        for name in ("sqrtA", "pinvA", "pinvSqrtA", "proj"):
            assert np.linalg.norm(getattr(L, name) - getattr(direct, name)) <= 1e-8 * max(
                1.0, np.linalg.norm(getattr(direct, name)))
        assert L.rank == direct.rank
        zero = np.zeros_like(w.sqrtA)
        assert np.linalg.norm(L.sqrtA - np.block([[w.sqrtA, zero], [zero, w.sqrtA]])) <= 1e-12


def test_assemble_examples():
    w = st.make_weight(np.eye(2))
    I, Z = np.eye(2), np.zeros((2, 2))
    np.testing.assert_allclose(assemble(BlockOperator(w, I, Z, Z, I)).T, np.eye(4))
    T, S = np.array([[1, 2], [3, 4]]), np.array([[5, 6], [7, 8]])
    np.testing.assert_allclose(assemble(BlockOperator.antidiag(w, T, S)).T, np.block([[Z, T], [S, Z]]))


def test_assemble_rejects_bad_block():
    w = st.make_weight(E00)
    with pytest.raises(NotInBA):
        assemble(BlockOperator.diag(w, np.eye(2), np.array([[0.0, 1.0], [0.0, 0.0]])))


def test_assembled_membership():
    for w, rng in draws(40):
        b = BlockOperator(w, *(en.gen_operator_matrix(w, "general_in_BA", rng) for _ in range(4)))
        op = assemble(b)
        assert op.inBA
        assert st.in_BA(op.weight, op.T).residual <= 1e-10


def test_block_sharp_check():
    w = st.make_weight(np.eye(2))
    rng = np.random.default_rng(0)
    b = BlockOperator(w, *(en.ginibre(rng, 2) for _ in range(4)))
    assert block_sharp_check(b) <= 1e-15
    for w, rng in draws(40):
        ops = [en.gen_operator_matrix(w, "general_in_BA", rng) for _ in range(4)]
        assert block_sharp_check(BlockOperator(w, *ops)) <= 1e-10
        assert block_sharp_check(BlockOperator.diag(w, ops[0], ops[1])) <= 1e-10


def test_block_norm_identities():
    for w, rng in draws(40):
        L = lift_weight(w)
        T = en.gen_operator_matrix(w, "general_in_BA", rng)
        S = en.gen_operator_matrix(w, "general_in_BA", rng)
        wT = a_numerical_radius(st.bind(w, T)).value
        wS = a_numerical_radius(st.bind(w, S)).value
        nT = op_seminorm(st.bind(w, T)).value
        nS = op_seminorm(st.bind(w, S)).value

        def om2(b):
            return a_numerical_radius(assemble(b, L)).value

        def nrm2(b):
            return op_seminorm(assemble(b, L)).value

        assert om2(BlockOperator.diag(w, T, S)) == pytest.approx(max(wT, wS), rel=1e-8)
        assert om2(BlockOperator.diag(w, T, st.sharp(w, T))) == pytest.approx(wT, rel=1e-8)
        assert nrm2(BlockOperator.antidiag(w, T, S)) == pytest.approx(max(nT, nS), rel=1e-10)
        assert nrm2(BlockOperator.diag(w, T, S)) == pytest.approx(max(nT, nS), rel=1e-10)


def test_positive_antidiag_half_sum():
    w = st.make_weight(np.eye(2))
    b = BlockOperator.antidiag(w, np.eye(2), np.eye(2))
    assert a_numerical_radius(assemble(b)).value == pytest.approx(1.0, abs=1e-12)
    for w, rng in draws(30):
        T = en.gen_operator_matrix(w, "a_positive", rng)
        S = en.gen_operator_matrix(w, "a_positive", rng)
        lhs = a_numerical_radius(assemble(BlockOperator.antidiag(w, T, S))).value
        assert lhs == pytest.approx(0.5 * op_seminorm(st.bind(w, T + S)).value, rel=1e-8)


def test_block_spectral_bound():
    for w, rng in draws(60):
        T1, T2, S1, S2 = (en.gen_operator_matrix(w, "general_in_BA", rng) for _ in range(4))

        def n(M):
            return op_seminorm(st.bind(w, M)).value

        rhs = sym2x2_nonneg_norm(n(S1 @ T1), n(S2 @ T2), np.sqrt(n(S1 @ T2) * n(S2 @ T1)))
        lhs = a_spectral_radius(st.bind(w, T1 @ S1 + T2 @ S2)).value
        assert lhs <= rhs * (1 + 1e-9)
