import numpy as np
import pytest

from semihilbert import ensembles as en
from semihilbert import structure as st
from semihilbert.errors import DegenerateDraw, InvalidConfig, InvalidRank


def test_gen_weight_ranks():
    w = en.gen_weight(2, 2, 1)
    assert w.rank == 2 and np.linalg.eigvalsh(w.A).min() > 0
    assert en.gen_weight(3, 1, 1).rank == 1


def test_gen_weight_deterministic():
    a = en.gen_weight(4, 2, en.substream(9, 1)).A
    b = en.gen_weight(4, 2, en.substream(9, 1)).A
    assert a.tobytes() == b.tobytes()
    c = en.gen_weight(4, 2, en.substream(9, 2)).A
    assert not np.array_equal(a, c)


def test_gen_weight_invalid_rank():
    with pytest.raises(InvalidRank):
        en.gen_weight(3, 0)
    with pytest.raises(InvalidRank):
        en.gen_weight(3, 4)


def test_ensemble_spec_validation():
    en.EnsembleSpec(4, 2, "a_positive", 10, 1)
    with pytest.raises(InvalidRank):
        en.EnsembleSpec(2, 3)
    with pytest.raises(InvalidConfig):
        en.EnsembleSpec(2, 2, trials=0)
    with pytest.raises(InvalidConfig):
        en.EnsembleSpec(2, 2, op_class="hermitian")


def test_identity_weight_gives_unconstrained_operator():
    w = st.make_weight(np.eye(3))
    T = en.gen_operator_matrix(w, "general_in_BA", en.substream(1))
    assert np.count_nonzero(np.abs(T) < 1e-12) == 0


def test_singular_weight_block_structure():
    w = st.make_weight(np.diag([1.0, 0.0]))
    for i in range(20):
        T = en.gen_operator_matrix(w, "general_in_BA", en.substream(2, i))
        assert abs(T[0, 1]) <= 1e-14  # T e2 stays in span(e2)


@pytest.mark.parametrize("cls", ["general_in_BA", "a_selfadjoint", "a_positive"])
def test_generated_classes_pass_predicates(cls):
    for i in range(100):
        rng = en.substream(3, i)
        n = int(rng.integers(2, 7))
        w = en.gen_weight(n, int(rng.integers(1, n + 1)), rng)
        op = en.gen_operator(w, cls, rng)
        assert op.inBA and op.inBAhalf
        p = st.predicates(w, op.T)
        if cls != "general_in_BA":
            assert p.a_selfadjoint
        if cls == "a_positive":
            assert p.a_positive


def test_plain_gaussian_not_in_ba_for_singular_weight():
    rng = en.substream(4)
    for n in range(2, 7):
        for r in range(1, n):
            w = en.gen_weight(n, r, rng)
            assert not st.in_BA(w, en.ginibre(rng, n)).ok


def test_project_to_class_is_idempotent():
    rng = en.substream(6)
    w = en.gen_weight(5, 3, rng)
    for cls in ("general_in_BA", "a_selfadjoint", "a_positive"):
        P = en.project_to_class(w, en.ginibre(rng, 5), cls)
        assert st.in_BA(w, P).ok
        assert np.linalg.norm(en.project_to_class(w, P, cls) - P) <= 1e-10 * np.linalg.norm(P)


def test_unit_a_vector():
    x = en.gen_unit_a_vector(st.make_weight(np.eye(2)), 1)
    assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)
    x = en.gen_unit_a_vector(st.make_weight(np.diag([4.0, 0.0])), 2)
    assert abs(x[0]) == pytest.approx(0.5, abs=1e-12) and abs(x[1]) <= 1e-15
    for i in range(100):
        rng = en.substream(8, i)
        w = en.gen_weight(5, 1 + i % 5, rng)
        assert st.vec_seminorm(w, en.gen_unit_a_vector(w, rng)) == pytest.approx(1.0, abs=1e-12)


def test_unit_a_vector_degenerate():
    class Zero:
        n = 2
        proj = np.zeros((2, 2))
        sqrtA = np.zeros((2, 2))

    with pytest.raises(DegenerateDraw):
        en.gen_unit_a_vector(Zero(), 1, attempts=5)


def test_seed_env(monkeypatch):
    monkeypatch.setenv(en.SEED_ENV, "123")
    assert en.default_seed() == 123
    monkeypatch.delenv(en.SEED_ENV)
    assert en.default_seed() == en.DEFAULT_SEED


def test_ginibre_moments():
    z = en.ginibre(en.substream(10), 400, 400)
    assert np.mean(np.abs(z) ** 2) == pytest.approx(1.0, abs=0.02)
    assert abs(np.mean(z)) < 0.01
