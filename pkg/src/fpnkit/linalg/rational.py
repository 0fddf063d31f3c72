"""Gaussian elimination over Q with ``fractions.Fraction``."""

from __future__ import annotations

from fractions import Fraction


def _rref(rows, ncols):
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def q_solve(A, b, ncols: int):
    """Solve ``A x = b`` over Q; returns ``(particular | None, kernel_basis)``."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = _rref(aug, ncols + 1)
    kernel = q_kernel_from_rref(R, [p for p in pivots if p < ncols], ncols)
    if ncols in pivots:
        return None, kernel
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    return x, kernel


def q_kernel_from_rref(R, pivots, ncols):
    pset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][free]
        basis.append(v)
    return basis


def q_kernel(A, ncols: int):
    R, pivots = _rref(A, ncols)
    return q_kernel_from_rref(R, pivots, ncols)


def q_rank(rows, ncols: int) -> int:
    return len(_rref(rows, ncols)[1])
