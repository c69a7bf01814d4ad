"""Dense complex linear algebra kernel.

Everything here works on plain ``numpy`` complex arrays. Matrices enter the
package through :func:`as_matrix`, which is the single place where shape and
finiteness are validated.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy import linalg as sla
from scipy.optimize import minimize_scalar

from .errors import (
    DimensionMismatch,
    InvalidInput,
    NegativeEntry,
    NoConvergence,
    NotHermitian,
    NotPSD,
)

EPS = np.finfo(float).eps

DEFAULT_GRID = 512
DEFAULT_REFINE_TOL = 1e-12


def as_matrix(M, square: bool = False) -> np.ndarray:
    """Return ``M`` as a finite 2-D complex128 array.

    Raises InvalidInput on non-finite entries or an empty/1-D shape and
    DimensionMismatch when ``square`` is requested but ``M`` is not square.
    """
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidInput(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("matrix has non-finite entries")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    return arr


def as_vector(x, n: int | None = None) -> np.ndarray:
    arr = np.asarray(x, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("vector has non-finite entries")
    if n is not None and arr.shape[0] != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {arr.shape[0]}")
    return arr


def hermitian_part(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.conj().T)


def hermitian_defect(M: np.ndarray) -> float:
    """Relative Frobenius distance from ``M`` to the Hermitian matrices."""
    return float(np.linalg.norm(M - M.conj().T) / max(1.0, np.linalg.norm(M)))


class HermEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def jacobi_eigh(M, tol: float = 1e-10, max_sweeps: int = 100) -> HermEig:
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each pivot (p, q) is first made real by a diagonal phase and then
    annihilated by a real plane rotation. Sweeps stop once the off-diagonal
    Frobenius mass falls below ``EPS * ||M||_F``.
    """
    M = as_matrix(M, square=True)
    if hermitian_defect(M) > tol:
        raise NotHermitian(f"asymmetry {hermitian_defect(M):.3e} exceeds tol {tol:.1e}")
    a = hermitian_part(M).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)
    threshold = EPS * scale
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= threshold * 1e-3:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # J = diag-phase * rotation restricted to columns (p, q)
                jpp, jpq = c, s
                jqp, jqq = -s * phase.conjugate(), c * phase.conjugate()
                colp, colq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = colp * jpp + colq * jqp
                a[:, q] = colp * jpq + colq * jqq
                rowp, rowq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = np.conj(jpp) * rowp + np.conj(jqp) * rowq
                a[q, :] = np.conj(jpq) * rowp + np.conj(jqq) * rowq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = vp * jpp + vq * jqp
                v[:, q] = vp * jpq + vq * jqq
    else:
        raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    lam = np.real(np.diag(a))
    order = np.argsort(lam, kind="stable")
    return HermEig(lam[order], v[:, order])


def hermitian_eig(M, tol: float = 1e-10, method: str = "lapack") -> HermEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="jacobi"`` runs :func:`jacobi_eigh`; ``"lapack"`` defers to
    ``numpy.linalg.eigh``. Both validate Hermitian symmetry against ``tol``.
    """
    if method == "jacobi":
        return jacobi_eigh(M, tol=tol)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    M = as_matrix(M, square=True)
    if hermitian_defect(M) > tol:
        raise NotHermitian(f"asymmetry {hermitian_defect(M):.3e} exceeds tol {tol:.1e}")
    lam, vec = np.linalg.eigh(hermitian_part(M))
    return HermEig(lam, vec)


def psd_sqrt(M, tol: float = 1e-10) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-tol * lambda_max, 0)`` are clamped to zero; anything
    more negative raises NotPSD.
    """
    lam, vec = hermitian_eig(M, tol=tol)
    top = max(float(lam[-1]), 0.0)
    if lam[0] < -tol * max(top, 1.0):
        raise NotPSD(f"eigenvalue {lam[0]:.3e} below -tol * lambda_max")
    root = np.sqrt(np.clip(lam, 0.0, None))
    R = (vec * root) @ vec.conj().T
    return hermitian_part(R)


def default_rank_tol(shape) -> float:
    return max(shape) * EPS * 64


def pinv(M, rank_tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse via the SVD.

    Singular values ``<= rank_tol * sigma_max`` are treated as zero. The
    default cutoff is ``max(m, n) * eps * 64``.
    """
    M = as_matrix(M)
    if rank_tol is None:
        rank_tol = default_rank_tol(M.shape)
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((M.shape[1], M.shape[0]), dtype=np.complex128)
    keep = s > rank_tol * s[0]
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (Vh.conj().T * inv) @ U.conj().T


def spectral_norm(M) -> float:
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def roundoff(M: np.ndarray) -> float:
    """Crude absolute rounding allowance for one dense kernel call on ``M``."""
    return 16.0 * max(M.shape) * EPS * float(np.linalg.norm(M))


def theta_sweep_max(
    batch: Callable[[np.ndarray], np.ndarray],
    scalar: Callable[[float], float],
    period: float,
    grid: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
    curvature: float | None = None,
    newton: Callable[[float], tuple[float, float, float]] | None = None,
) -> tuple[float, float]:
    """Maximize a periodic function of an angle on a grid, then refine.

    The grid has step ``2*pi/grid`` over one ``period``. The best grid point
    is refined on its two neighbouring cells, by Newton steps when
    ``newton(t) -> (f, f', f'')`` is supplied and by bounded Brent search
    otherwise (or when Newton leaves the bracket or stalls).

    The returned half-width is certified under a semiconvexity assumption
    ``f'' >= -c``: on a cell, ``f <= max(endpoints) + c*step**2/8``. Pass the
    constant as ``curvature``; ``None`` means ``c = sup f`` (true for support
    functions of convex sets, e.g. numerical ranges).

    Returns
    -------
    (value, halfwidth)
        ``value`` is attained by the function; the supremum lies in
        ``[value, value + halfwidth]``.
    """
    step = 2.0 * math.pi / grid
    npts = max(int(round(period / step)), 1)
    thetas = np.arange(npts) * step
    vals = np.asarray(batch(thetas), dtype=float)
    k = int(np.argmax(vals))
    top = float(vals[k])
    lo, hi = thetas[k] - step, thetas[k] + step
    if newton is not None:
        found = _newton_max(newton, float(thetas[k]), lo, hi, refine_tol)
        if found is not None:
            return _finish(top, found, step, curvature)
    res = minimize_scalar(
        lambda t: -scalar(t),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": refine_tol, "maxiter": 500},
    )
    if not res.success:
        raise NoConvergence(f"angle refinement failed: {res.message}")
    return _finish(top, float(-res.fun), step, curvature)


def _newton_max(fn, t, lo, hi, tol, max_iter=30):
    for _ in range(max_iter):
        f, d1, d2 = fn(t)
        if abs(d1) <= 64.0 * EPS * max(1.0, abs(f)):
            return f
        if not d2 < 0.0:
            return None
        dt = -d1 / d2
        t += dt
        if not lo <= t <= hi:
            return None
        if abs(dt) <= tol:
            return fn(t)[0]
    return None


def _finish(top, refined, step, curvature):
    value = max(top, refined)
    if curvature is None:
        shrink = 1.0 - step * step / 8.0
        upper = top / shrink if top > 0 else top
    else:
        upper = top + curvature * step * step / 8.0
    return value, max(upper - value, 0.0)


def _hermitian_pencil(M: np.ndarray):
    X = 0.5 * (M + M.conj().T)
    Y = 0.5j * (M - M.conj().T)
    return X, Y


def numerical_radius_bounds(
    M, grid: int = DEFAULT_GRID, refine_tol: float = DEFAULT_REFINE_TOL
) -> tuple[float, float]:
    """Numerical radius of ``M`` with a certified interval half-width.

    Uses ``w(M) = max_theta |lambda|_max(Re(e^{i theta} M))``; the function is
    pi-periodic once both spectral extremes are taken, which halves the grid.
    """
    M = as_matrix(M, square=True)
    if M.shape[0] == 1:
        return float(abs(M[0, 0])), 0.0
    X, Y = _hermitian_pencil(M)

    def batch(th):
        H = np.cos(th)[:, None, None] * X + np.sin(th)[:, None, None] * Y
        lam = np.linalg.eigvalsh(H)
        return np.maximum(lam[:, -1], -lam[:, 0])

    def scalar(t):
        lam = np.linalg.eigvalsh(math.cos(t) * X + math.sin(t) * Y)
        return max(lam[-1], -lam[0])

    def newton(t):
        # f = extreme eigenvalue of +-H(t); H'' = -H, so second-order
        # perturbation theory gives f'' from the full eigensystem
        c, s = math.cos(t), math.sin(t)
        lam, V = np.linalg.eigh(c * X + s * Y)
        sign, k = (1.0, -1) if lam[-1] >= -lam[0] else (-1.0, 0)
        lam = sign * lam
        D = sign * (V.conj().T @ (c * Y - s * X) @ V)
        d1 = D[k, k].real
        gaps = lam[k] - lam
        gaps[k] = np.inf
        if np.min(gaps) <= 1e3 * EPS * max(1.0, abs(lam[k])):
            return lam[k], d1, math.nan
        d2 = -lam[k] + 2.0 * float(np.sum(np.abs(D[:, k]) ** 2 / gaps))
        return lam[k], d1, d2

    value, hw = theta_sweep_max(batch, scalar, math.pi, grid, refine_tol, newton=newton)
    return value, hw + roundoff(M)


def classical_numerical_radius(
    M, grid: int = DEFAULT_GRID, refine_tol: float = DEFAULT_REFINE_TOL
) -> float:
    return numerical_radius_bounds(M, grid, refine_tol)[0]


def spectral_radius_bounds(M) -> tuple[float, float]:
    """Spectral radius and an eigenvalue-conditioning error half-width."""
    M = as_matrix(M, square=True)
    if M.shape[0] == 1:
        return float(abs(M[0, 0])), 0.0
    w, vl, vr = sla.eig(M, left=True, right=True)
    if not np.all(np.isfinite(w)):
        raise NoConvergence("eigenvalue solver returned non-finite values")
    k = int(np.argmax(np.abs(w)))
    denom = abs(np.vdot(vl[:, k], vr[:, k]))
    nrm = float(np.linalg.norm(M))
    bound = spectral_norm(M)
    if denom <= EPS:
        hw = bound
    else:
        cond = np.linalg.norm(vl[:, k]) * np.linalg.norm(vr[:, k]) / denom
        hw = min(cond * 16.0 * M.shape[0] * EPS * nrm, bound)
    return float(abs(w[k])), float(hw)


def classical_spectral_radius(M) -> float:
    M = as_matrix(M, square=True)
    w = np.linalg.eigvals(M)
    if not np.all(np.isfinite(w)):
        raise NoConvergence("eigenvalue solver returned non-finite values")
    return float(np.max(np.abs(w)))


def sym2x2_nonneg_norm(a: float, b: float, g: float) -> float:
    """Spectral norm of ``[[a, g], [g, b]]`` for nonnegative entries."""
    if a < 0 or b < 0 or g < 0:
        raise NegativeEntry(f"entries must be nonnegative, got {(a, b, g)}")
    return 0.5 * ((a + b) + math.sqrt((a - b) ** 2 + 4.0 * g * g))
