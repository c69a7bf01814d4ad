"""2x2 operator matrices over the doubled weight diag(A, A)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .errors import NotInBA
from .structure import SemiOperator, Weight, _frozen, bind, in_BA, sharp


def lift_weight(w: Weight) -> Weight:
    """Weight diag(A, A) on H + H, with every artifact built blockwise."""
    n = w.n

    def twice(M):
        return _frozen(block_diag(M, M))

    basis = np.zeros((2 * n, 2 * w.rank), dtype=np.complex128)
    basis[:n, : w.rank] = w.basis
    basis[n:, w.rank :] = w.basis
    null = np.zeros((2 * n, 2 * (n - w.rank)), dtype=np.complex128)
    null[:n, : n - w.rank] = w.null_basis
    null[n:, n - w.rank :] = w.null_basis
    return Weight(
        A=twice(w.A),
        sqrtA=twice(w.sqrtA),
        pinvA=twice(w.pinvA),
        pinvSqrtA=twice(w.pinvSqrtA),
        proj=twice(w.proj),
        rank=2 * w.rank,
        tol=w.tol,
        eigvals=_frozen(np.sort(np.concatenate([w.eigvals, w.eigvals]))),
        basis=_frozen(basis),
        null_basis=_frozen(null),
        range_eigvals=_frozen(np.concatenate([w.range_eigvals, w.range_eigvals])),
    )


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """[[T, S], [X, Y]] acting on H + H."""

    weight: Weight
    T: np.ndarray
    S: np.ndarray
    X: np.ndarray
    Y: np.ndarray

    @classmethod
    def diag(cls, w, T, S):
        Z = np.zeros_like(np.asarray(T, dtype=np.complex128))
        return cls(w, T, Z, Z, S)

    @classmethod
    def antidiag(cls, w, T, S):
        Z = np.zeros_like(np.asarray(T, dtype=np.complex128))
        return cls(w, Z, T, S, Z)

    @property
    def blocks(self):
        return self.T, self.S, self.X, self.Y

    def matrix(self) -> np.ndarray:
        return np.block([[self.T, self.S], [self.X, self.Y]]).astype(np.complex128)


def assemble(b: BlockOperator, lifted: Weight | None = None) -> SemiOperator:
    """Bind the block matrix to diag(A, A); every block must lie in B_A(H)."""
    for name, M in zip("TSXY", b.blocks):
        if not in_BA(b.weight, M).ok:
            raise NotInBA(f"block {name} does not admit an A-adjoint")
    if lifted is None:
        lifted = lift_weight(b.weight)
    return bind(lifted, b.matrix())


def block_sharp_check(b: BlockOperator, lifted: Weight | None = None) -> float:
    """Relative distance between the lifted A-adjoint and the blockwise formula."""
    op = assemble(b, lifted)
    w = b.weight
    T, S, X, Y = (sharp(w, M) for M in b.blocks)
    expected = np.block([[T, X], [S, Y]])
    scale = max(1.0, float(np.linalg.norm(op.sharp)))
    return float(np.linalg.norm(op.sharp - expected) / scale)
