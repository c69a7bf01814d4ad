"""A-operator seminorm, A-numerical radius and A-spectral radius.

Each functional is returned as a :class:`RadiusResult` whose
``error_halfwidth`` bounds the distance to the exact value, so callers can
compare bounds in a certified way.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Overflow, WeightMismatch
from .linalg import (
    DEFAULT_GRID,
    DEFAULT_REFINE_TOL,
    numerical_radius_bounds,
    roundoff,
    spectral_norm,
    spectral_radius_bounds,
    theta_sweep_max,
)
from .structure import SemiOperator, bind

METHODS = ("compression", "theta_sweep", "limit_formula", "eigen")
LIMIT_POWERS = (1, 2, 4, 8, 16, 32, 64)


@dataclass(frozen=True)
class RadiusResult:
    value: float
    method: str
    error_halfwidth: float = 0.0

    def __float__(self) -> float:
        return self.value


def op_seminorm(op: SemiOperator) -> RadiusResult:
    """||T||_A as the operator norm of the compression."""
    op.require_bounded()
    M = op.tilde_r
    if M.size == 0:
        return RadiusResult(0.0, "compression")
    return RadiusResult(spectral_norm(M), "compression", roundoff(M))


def _omega_theta_sweep(op: SemiOperator, grid: int, refine_tol: float) -> RadiusResult:
    op.require_ba()
    w = op.weight
    if w.rank == 0:
        return RadiusResult(0.0, "theta_sweep")
    # compressions of T and of its A-adjoint, each computed from its own matrix
    Tc = op.tilde_r
    Sc = w.reduce(w.sqrtA @ op.sharp @ w.pinvSqrtA)

    def batch(th):
        z = np.exp(1j * th)[:, None, None]
        R = 0.5 * (z * Tc + np.conj(z) * Sc)
        return np.linalg.norm(R, 2, axis=(1, 2))

    def scalar(t):
        R = bind(w, 0.5 * (np.exp(1j * t) * op.T + np.exp(-1j * t) * op.sharp))
        return op_seminorm(R).value

    value, hw = theta_sweep_max(batch, scalar, math.pi, grid, refine_tol)
    return RadiusResult(value, "theta_sweep", hw + roundoff(Tc) + roundoff(Sc))


def a_numerical_radius(
    op: SemiOperator,
    algo: str = "compression",
    grid: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> RadiusResult:
    """A-numerical radius.

    ``compression`` evaluates the classical numerical radius of T-tilde;
    ``theta_sweep`` maximizes ||Re_A(e^{i theta} T)||_A over theta and needs
    T in B_A(H).
    """
    if algo == "compression":
        op.require_bounded()
        if op.tilde_r.size == 0:
            return RadiusResult(0.0, algo)
        value, hw = numerical_radius_bounds(op.tilde_r, grid, refine_tol)
        return RadiusResult(value, algo, hw)
    if algo == "theta_sweep":
        return _omega_theta_sweep(op, grid, refine_tol)
    raise ValueError(f"unknown numerical radius algorithm {algo!r}")


def _limit_formula(op: SemiOperator) -> RadiusResult:
    w = op.weight
    c = op_seminorm(op).value
    if c == 0.0:
        return RadiusResult(0.0, "limit_formula")
    # ||T^n||_A only sees P T P, and powering it avoids blow-up on N(A)
    X = w.proj @ (op.T / c) @ w.proj
    estimates = []
    power = X
    done = 1
    for n in LIMIT_POWERS:
        while done < n:
            power = power @ power
            done *= 2
        if not np.all(np.isfinite(power)):
            raise Overflow(f"power {n} left the floating point range")
        tilde = w.reduce(w.sqrtA @ power @ w.pinvSqrtA)
        estimates.append(c * spectral_norm(tilde) ** (1.0 / n))
    value = min(estimates)
    return RadiusResult(value, "limit_formula", abs(estimates[-1] - estimates[-2]))


def a_spectral_radius(op: SemiOperator, algo: str = "eigen") -> RadiusResult:
    """A-spectral radius via the spectrum of T-tilde or via inf ||T^n||_A^{1/n}."""
    op.require_bounded()
    if algo == "eigen":
        if op.tilde_r.size == 0:
            return RadiusResult(0.0, algo)
        value, hw = spectral_radius_bounds(op.tilde_r)
        return RadiusResult(value, algo, hw)
    if algo == "limit_formula":
        return _limit_formula(op)
    raise ValueError(f"unknown spectral radius algorithm {algo!r}")


def theta_sup_product(
    opT: SemiOperator,
    opS: SemiOperator,
    grid: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> RadiusResult:
    """sup over theta of ||Re_A(e^{i theta} T) Re_A(e^{i theta} S)||_A.

    Writing Re_A(e^{i theta} T) = cos(theta) a + sin(theta) b, the product is
    ``C0 + C1 cos(2 theta) + C2 sin(2 theta)``, whose norm is semiconvex with
    constant ``4 (||C1|| + ||C2||)``; that constant certifies the grid.
    """
    if opT.weight is not opS.weight and not np.array_equal(opT.weight.A, opS.weight.A):
        raise WeightMismatch("operands are bound to different weights")
    opT.require_ba()
    opS.require_ba()
    w = opT.weight
    if w.rank == 0:
        return RadiusResult(0.0, "theta_sweep")

    def parts(op):
        re = bind(w, 0.5 * (op.T + op.sharp))
        im = bind(w, 0.5j * (op.T - op.sharp))
        return re.tilde_r, im.tilde_r

    a, b = parts(opT)
    c, d = parts(opS)
    C0 = 0.5 * (a @ c + b @ d)
    C1 = 0.5 * (a @ c - b @ d)
    C2 = 0.5 * (a @ d + b @ c)

    def batch(th):
        P = C0 + np.cos(2 * th)[:, None, None] * C1 + np.sin(2 * th)[:, None, None] * C2
        return np.linalg.norm(P, 2, axis=(1, 2))

    def scalar(t):
        return spectral_norm(C0 + math.cos(2 * t) * C1 + math.sin(2 * t) * C2)

    curv = 4.0 * (spectral_norm(C1) + spectral_norm(C2))
    value, hw = theta_sweep_max(batch, scalar, math.pi, grid, refine_tol, curvature=curv)
    return RadiusResult(value, "theta_sweep", hw + roundoff(C0) + roundoff(C1) + roundoff(C2))
