"""Seeded random ensembles that respect the operator-class hypotheses.

Operators are drawn in the A-adapted orthonormal basis (R(A) first, then
N(A)). In that basis T lies in B_A(H) exactly when its N(A) -> R(A) block
vanishes, and A T is Hermitian (PSD) when additionally the R(A) block equals
Lambda^{-1} H with H Hermitian (PSD).
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDraw, InvalidConfig, InvalidRank
from .structure import SemiOperator, Weight, bind, make_weight

OP_CLASSES = ("general_in_BA", "a_selfadjoint", "a_positive", "unit_a_vector")
DEFAULT_SEED = 20210817
SEED_ENV = "SEMIHILBERT_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent counter-based (Philox) stream for ``(seed, *key)``."""
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return substream(default_seed() if rng is None else rng)


def ginibre(rng: np.random.Generator, rows: int, cols: int | None = None) -> np.ndarray:
    """Standard complex Gaussian matrix, E|z|^2 = 1."""
    cols = rows if cols is None else cols
    z = rng.standard_normal((rows, cols, 2))
    return (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)


@dataclass(frozen=True)
class EnsembleSpec:
    dim: int
    rankA: int
    op_class: str = "general_in_BA"
    trials: int = 1
    seed: int = DEFAULT_SEED
    scale: float = 1.0

    def __post_init__(self):
        if not 1 <= self.rankA <= self.dim:
            raise InvalidRank(f"rankA={self.rankA} outside [1, {self.dim}]")
        if self.trials < 1:
            raise InvalidConfig("trials must be >= 1")
        if self.op_class not in OP_CLASSES:
            raise InvalidConfig(f"unknown operator class {self.op_class!r}")


def gen_weight(dim: int, rankA: int, rng=None, tol: float = 1e-8) -> Weight:
    """A = G G* with G a dim-by-rankA Ginibre matrix."""
    if not 1 <= rankA <= dim:
        raise InvalidRank(f"rankA={rankA} outside [1, {dim}]")
    rng = as_rng(rng)
    G = ginibre(rng, dim, rankA)
    return make_weight(G @ G.conj().T, tol=tol)


def _adapted(w: Weight) -> np.ndarray:
    return np.hstack([w.basis, w.null_basis])


def _range_eigvals(w: Weight) -> np.ndarray:
    return w.range_eigvals


def _core_block(w: Weight, op_class: str, rng) -> np.ndarray:
    r = w.rank
    lam = _range_eigvals(w)
    if op_class == "general_in_BA":
        return ginibre(rng, r)
    G = ginibre(rng, r)
    if op_class == "a_selfadjoint":
        H = 0.5 * (G + G.conj().T)
    elif op_class == "a_positive":
        H = G @ G.conj().T / r
    else:
        raise InvalidConfig(f"{op_class!r} is not an operator class")
    return H / lam[:, None]


def gen_operator_matrix(w: Weight, op_class: str = "general_in_BA", rng=None, scale: float = 1.0) -> np.ndarray:
    rng = as_rng(rng)
    n, r = w.n, w.rank
    Tp = np.zeros((n, n), dtype=np.complex128)
    Tp[:r, :r] = _core_block(w, op_class, rng)
    if r < n:
        Tp[r:, :r] = ginibre(rng, n - r, r)
        Tp[r:, r:] = ginibre(rng, n - r)
    U = _adapted(w)
    return scale * (U @ Tp @ U.conj().T)


def gen_operator(w: Weight, op_class: str = "general_in_BA", rng=None, scale: float = 1.0) -> SemiOperator:
    """Random operator of the requested hypothesis class, bound to ``w``."""
    return bind(w, gen_operator_matrix(w, op_class, rng, scale))


def project_to_class(w: Weight, T: np.ndarray, op_class: str) -> np.ndarray:
    """Nearest-in-spirit member of ``op_class``: zero the forbidden block and
    re-Hermitize (and PSD-clamp) the weighted R(A) block as required."""
    U = _adapted(w)
    r = w.rank
    Tp = U.conj().T @ T @ U
    Tp[:r, r:] = 0.0
    if op_class in ("a_selfadjoint", "a_positive"):
        lam = _range_eigvals(w)
        H = lam[:, None] * Tp[:r, :r]
        H = 0.5 * (H + H.conj().T)
        if op_class == "a_positive":
            mu, V = np.linalg.eigh(H)
            H = (V * np.clip(mu, 0.0, None)) @ V.conj().T
        Tp[:r, :r] = H / lam[:, None]
    return U @ Tp @ U.conj().T


def gen_unit_a_vector(w: Weight, rng=None, attempts: int = 100) -> np.ndarray:
    """Gaussian vector projected onto R(A) and scaled to ||x||_A = 1."""
    rng = as_rng(rng)
    for _ in range(attempts):
        g = ginibre(rng, w.n, 1)[:, 0]
        v = w.proj @ g
        nrm = float(np.linalg.norm(w.sqrtA @ v))
        if nrm > 1e-8 * max(1.0, float(np.linalg.norm(g))):
            return v / nrm
    raise DegenerateDraw(f"no usable draw in {attempts} attempts")


def gen_vector(w: Weight, rng=None) -> np.ndarray:
    return ginibre(as_rng(rng), w.n, 1)[:, 0]
