"""Smith normal form over the integers and the lattice helpers built on it.

The internal routines work on plain ``list[list[int]]`` (rows); the public
``smith_normal_form`` wraps :class:`RingMatrix` over ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionError, UnsupportedRingError
from ..rings import RingKind, ZZ
from .matrix import RingMatrix


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class SmithResult:
    """``U @ A @ V == D`` with ``U @ Uinv == I`` and ``V @ Vinv == I``."""

    U: list
    D: list
    V: list
    Uinv: list
    Vinv: list
    diagonal: list
    rank: int


def smith(A, m: int | None = None, n: int | None = None) -> SmithResult:
    """Smith form of an integer matrix given as rows.

    Pivot: smallest nonzero absolute value, ties broken in row-major order.
    """
    A = [list(r) for r in A]
    m = len(A) if m is None else m
    n = (len(A[0]) if A else 0) if n is None else n
    U, Uinv, V, Vinv = _eye(m), _eye(m), _eye(n), _eye(n)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            ra, rs = A[dst], A[src]
            for k in range(n):
                if rs[k]:
                    ra[k] += q * rs[k]
            ua, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ua[k] += q * us[k]
            for row in Uinv:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for row in A:
                if row[src]:
                    row[dst] += q * row[src]
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vd, vs = Vinv[dst], Vinv[src]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = abs(v)
                    if best is None or av < best[0]:
                        best = (av, i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t + 1, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, None)
                for j in range(t + 1, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), None, j)
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            for row in Uinv:
                row[t] = -row[t]
        t += 1
    diagonal = [A[i][i] for i in range(min(m, n))]
    rank = sum(1 for d in diagonal if d)
    return SmithResult(U, A, V, Uinv, Vinv, diagonal, rank)


@dataclass(frozen=True)
class SmithDecomposition:
    U: RingMatrix
    D: RingMatrix
    V: RingMatrix
    invariant_factors: tuple


def smith_normal_form(A: RingMatrix) -> SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``d_i | d_{i+1}``."""
    if A.ring.kind is not RingKind.INTEGERS:
        raise UnsupportedRingError(f"Smith normal form needs Z, got {A.ring}")
    res = smith(A.to_rows(), A.rows, A.cols)
    return SmithDecomposition(
        RingMatrix.from_rows(ZZ, res.U, A.rows),
        RingMatrix.from_rows(ZZ, res.D, A.cols),
        RingMatrix.from_rows(ZZ, res.V, A.cols),
        tuple(res.diagonal),
    )


# ---------------------------------------------------------------------------
# lattice helpers on integer column vectors


def _columns_to_rows(columns, dim):
    return [[c[i] for c in columns] for i in range(dim)]


def int_solve(A, b, ncols: int | None = None):
    """Solve ``A x = b`` over Z.

    Returns ``(particular, kernel_basis)`` with ``particular`` None when the
    system has no integer solution.
    """
    m = len(A)
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    if len(b) != m:
        raise DimensionError("right-hand side length mismatch")
    res = smith(A, m, n)
    c = [sum(res.U[i][k] * b[k] for k in range(m)) for i in range(m)]
    z = [0] * n
    ok = True
    for i in range(m):
        d = res.diagonal[i] if i < len(res.diagonal) else 0
        if d:
            if c[i] % d:
                ok = False
                break
            z[i] = c[i] // d
        elif c[i]:
            ok = False
            break
    kernel = [[res.V[r][j] for r in range(n)] for j in range(res.rank, n)]
    if not ok:
        return None, kernel
    x = [sum(res.V[r][k] * z[k] for k in range(n)) for r in range(n)]
    return x, kernel


def int_kernel(A, ncols: int | None = None):
    """Basis of the integer kernel of ``A`` (list of column vectors)."""
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    res = smith(A, len(A), n)
    return [[res.V[r][j] for r in range(n)] for j in range(res.rank, n)]


def lattice_basis(vectors, dim: int):
    """A basis (list of vectors) of the Z-span of ``vectors`` in ``Z^dim``."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    res = smith(_columns_to_rows(vectors, dim), dim, len(vectors))
    return [[res.Uinv[r][i] * res.diagonal[i] for r in range(dim)]
            for i in range(res.rank)]
