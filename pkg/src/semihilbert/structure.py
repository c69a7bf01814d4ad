"""Semi-Hilbertian structure induced by a positive semidefinite weight A.

A :class:`Weight` caches every artifact derived from ``A`` once; a
:class:`SemiOperator` binds an operator to a weight together with its
membership flags, A-adjoint and compression.

In finite dimension R(A) is closed and equals R(A^{1/2}), so the two
operator classes B_A(H) and B_{A^{1/2}}(H) coincide as sets (both mean
"T maps N(A) into N(A)"). They are still tested through two different
residuals, which makes the pair a useful consistency check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotABounded, NotHermitian, NotInBA, NotPSD, ZeroWeight
from .linalg import as_matrix, as_vector, default_rank_tol, hermitian_defect, hermitian_eig

DEFAULT_TOL = 1e-8


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Weight:
    """A validated PSD weight and its derived artifacts.

    ``basis`` holds an orthonormal basis of R(A) (eigenvectors with nonzero
    eigenvalue), ``null_basis`` one of N(A); together they form the
    A-adapted basis used by the generators. ``range_eigvals`` is the diagonal
    of A in ``basis``, recomputed from A itself so that products against A
    stay consistent to rounding.
    """

    A: np.ndarray
    sqrtA: np.ndarray
    pinvA: np.ndarray
    pinvSqrtA: np.ndarray
    proj: np.ndarray
    rank: int
    tol: float
    eigvals: np.ndarray
    basis: np.ndarray
    null_basis: np.ndarray
    range_eigvals: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def reduce(self, M: np.ndarray) -> np.ndarray:
        """Restrict ``M`` to R(A) in the eigenbasis (an r-by-r matrix)."""
        return self.basis.conj().T @ M @ self.basis

    def check_dim(self, M: np.ndarray) -> None:
        if M.shape[0] != self.n:
            raise DimensionMismatch(f"operand has dimension {M.shape[0]}, weight has {self.n}")


def _weight_from_eig(A, lam, vec, tol, rank_tol) -> Weight:
    top = float(lam[-1])
    keep = lam > rank_tol * top
    V = vec[:, keep]
    lam_r = lam[keep]
    root = np.sqrt(lam_r)
    pinvA = (V / lam_r) @ V.conj().T
    # V V* rather than A A^+: same matrix in exact arithmetic, but A A^+
    # carries cond(A) * eps of rounding
    proj = V @ V.conj().T
    return Weight(
        A=_frozen(A),
        sqrtA=_frozen((V * root) @ V.conj().T),
        pinvA=_frozen(pinvA),
        pinvSqrtA=_frozen((V / root) @ V.conj().T),
        proj=_frozen(0.5 * (proj + proj.conj().T)),
        rank=int(keep.sum()),
        tol=tol,
        eigvals=_frozen(lam),
        basis=_frozen(V),
        null_basis=_frozen(vec[:, ~keep]),
        range_eigvals=_frozen(np.real(np.einsum("ij,ik,kj->j", V.conj(), A, V))),
    )


def make_weight(A, tol: float = DEFAULT_TOL, rank_tol: float | None = None) -> Weight:
    """Validate ``A`` and build a :class:`Weight`.

    Eigenvalues at or below ``rank_tol * lambda_max`` count as zero; the
    default cutoff is ``n * eps * 64``.
    """
    A = as_matrix(A, square=True)
    if hermitian_defect(A) > tol:
        raise NotHermitian(f"weight asymmetry {hermitian_defect(A):.3e} exceeds tol {tol:.1e}")
    A = 0.5 * (A + A.conj().T)
    lam, vec = hermitian_eig(A, tol=tol)
    top = float(lam[-1])
    if top <= 0.0:
        if lam[0] < -tol * max(abs(lam[0]), 1.0):
            raise NotPSD("weight has no positive eigenvalue")
        raise ZeroWeight("weight must be non-zero")
    if lam[0] < -tol * top:
        raise NotPSD(f"weight eigenvalue {lam[0]:.3e} below -tol * lambda_max")
    if rank_tol is None:
        rank_tol = default_rank_tol(A.shape)
    return _weight_from_eig(A, lam, vec, tol, rank_tol)


def semi_inner(w: Weight, x, y) -> complex:
    """<x, y>_A = <Ax, y> with <u, v> = sum u_k conj(v_k)."""
    x = as_vector(x, w.n)
    y = as_vector(y, w.n)
    return complex(np.vdot(y, w.A @ x))


def vec_seminorm(w: Weight, x) -> float:
    x = as_vector(x, w.n)
    return float(np.linalg.norm(w.sqrtA @ x))


class Membership(NamedTuple):
    ok: bool
    residual: float


def _square(w: Weight, T) -> np.ndarray:
    T = as_matrix(T, square=True)
    w.check_dim(T)
    return T


def in_BA(w: Weight, T) -> Membership:
    """Douglas criterion R(T*A) within R(A), as a relative residual."""
    T = _square(w, T)
    TsA = T.conj().T @ w.A
    leak = TsA - w.proj @ TsA
    res = float(np.linalg.norm(leak) / max(1.0, np.linalg.norm(TsA)))
    return Membership(res <= w.tol, res)


def in_BA_half(w: Weight, T) -> Membership:
    """A-boundedness: ||Tx||_A vanishes whenever ||x||_A does."""
    T = _square(w, T)
    ST = w.sqrtA @ T
    leak = ST - ST @ w.proj
    res = float(np.linalg.norm(leak) / max(1.0, np.linalg.norm(ST)))
    return Membership(res <= w.tol, res)


def _sharp(w: Weight, T: np.ndarray) -> np.ndarray:
    # A^+ T* A evaluated in the eigenbasis: the diagonal scaling by
    # lambda_j / lambda_i is exact per entry, which keeps (T#)# close to PTP
    # even when A is badly conditioned
    V, lam = w.basis, w.range_eigvals
    M = V.conj().T @ T.conj().T @ V
    return V @ (M * (lam[None, :] / lam[:, None])) @ V.conj().T


def sharp(w: Weight, T) -> np.ndarray:
    """A-adjoint ``A^+ T* A``; raises NotInBA outside B_A(H)."""
    T = _square(w, T)
    if not in_BA(w, T).ok:
        raise NotInBA("operator does not admit an A-adjoint")
    return _sharp(w, T)


def re_a(w: Weight, T, phase: float = 0.0) -> np.ndarray:
    """A-real part of ``e^{i phase} T``."""
    T = _square(w, T)
    z = np.exp(1j * phase)
    return 0.5 * (z * T + np.conj(z) * sharp(w, T))


def compression(w: Weight, T) -> np.ndarray:
    """Finite-dimensional realization ``A^{1/2} T (A^{1/2})^+`` of T-tilde."""
    T = _square(w, T)
    if not in_BA_half(w, T).ok:
        raise NotABounded("operator does not map N(A) into N(A)")
    return w.sqrtA @ T @ w.pinvSqrtA


class Predicates(NamedTuple):
    a_selfadjoint: bool
    a_positive: bool
    a_normal: bool


def predicates(w: Weight, T) -> Predicates:
    """A-selfadjoint, A-positive and A-normal flags.

    ``a_normal`` is only meaningful inside B_A(H); outside it is False.
    """
    T = _square(w, T)
    AT = w.A @ T
    scale = max(1.0, float(np.linalg.norm(AT)))
    selfadj = float(np.linalg.norm(AT - AT.conj().T)) <= w.tol * scale
    positive = False
    if selfadj:
        lam = np.linalg.eigvalsh(0.5 * (AT + AT.conj().T))
        positive = bool(lam[0] >= -w.tol * max(1.0, abs(lam[-1])))
    normal = False
    if in_BA(w, T).ok:
        Ts = _sharp(w, T)
        comm = Ts @ T - T @ Ts
        normal = float(np.linalg.norm(comm)) <= w.tol * max(1.0, float(np.linalg.norm(Ts @ T)))
    return Predicates(bool(selfadj), positive, bool(normal))


@dataclass(frozen=True, eq=False)
class SemiOperator:
    """An operator bound to a weight.

    Everything is computed eagerly in :func:`bind`, so instances are
    immutable and can be shared freely. ``sharp`` is None outside B_A(H) and
    ``tilde``/``tilde_r`` are None outside B_{A^{1/2}}(H). ``tilde_r`` is the
    compression restricted to R(A) (r-by-r), which carries the same norm,
    numerical range (up to the point 0) and nonzero spectrum.
    """

    weight: Weight
    T: np.ndarray
    inBA: bool
    inBAhalf: bool
    sharp: np.ndarray | None
    tilde: np.ndarray | None
    tilde_r: np.ndarray | None

    def require_ba(self) -> None:
        if not self.inBA:
            raise NotInBA("operator does not admit an A-adjoint")

    def require_bounded(self) -> None:
        if not self.inBAhalf:
            raise NotABounded("operator does not map N(A) into N(A)")


def bind(w: Weight, T) -> SemiOperator:
    T = _frozen(_square(w, T).copy())
    ba = in_BA(w, T).ok
    half = in_BA_half(w, T).ok
    Ts = _frozen(_sharp(w, T)) if ba else None
    tilde = tilde_r = None
    if half:
        tilde = _frozen(w.sqrtA @ T @ w.pinvSqrtA)
        tilde_r = _frozen(w.reduce(tilde))
    return SemiOperator(w, T, ba, half, Ts, tilde, tilde_r)
