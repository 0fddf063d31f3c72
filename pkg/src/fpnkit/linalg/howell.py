"""Howell form: a canonical representative of a row span over ``Z/n``.

Two matrices with the same number of columns have equal row spans over
``Z/n`` exactly when their Howell forms are equal.
"""

from __future__ import annotations

import math

from ..errors import UnsupportedRingError
from ..rings import RingKind
from .matrix import RingMatrix


def _gcdex(a: int, b: int):
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _unit_normalizer(a: int, n: int) -> int:
    """A unit ``u`` mod ``n`` with ``u*a == gcd(a, n)`` (mod ``n``)."""
    g = math.gcd(a, n)
    if g == n:
        return 1
    a_, n_ = a // g, n // g
    u = pow(a_, -1, n_) if n_ > 1 else 1
    while math.gcd(u, n) != 1:
        u += n_
    return u % n


def howell_rows(rows, n: int, ncols: int) -> list[list[int]]:
    """Reduced Howell form of ``rows`` over ``Z/n`` (zero rows removed)."""
    A = [[x % n for x in r] for r in rows if any(x % n for x in r)]
    A += [[0] * ncols for _ in range(max(0, ncols - len(A)))]
    r = 0
    for c in range(ncols):
        # move a gcd-combination of column c into row r
        for i in range(r + 1, len(A)):
            b = A[i][c]
            if not b:
                continue
            a = A[r][c]
            g, s, t = _gcdex(a, b)
            u, v = -b // g, a // g
            ra, rb = A[r], A[i]
            A[r] = [(s * x + t * y) % n for x, y in zip(ra, rb)]
            A[i] = [(u * x + v * y) % n for x, y in zip(ra, rb)]
        if r >= len(A) or not A[r][c]:
            continue
        unit = _unit_normalizer(A[r][c], n)
        A[r] = [(unit * x) % n for x in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [(x - q * y) % n for x, y in zip(A[i], A[r])]
        # the annihilator multiple of the pivot row lives in later columns
        ann = n // p
        extra = [(ann * x) % n for x in A[r]]
        if any(extra):
            A.append(extra)
        r += 1
    return [row for row in A[:r] if any(row)]


def howell_form(A: RingMatrix) -> RingMatrix:
    if A.ring.kind is not RingKind.MODULAR:
        raise UnsupportedRingError(f"Howell form needs Z/n, got {A.ring}")
    rows = howell_rows(A.to_rows(), A.ring.modulus, A.cols)
    return RingMatrix.from_rows(A.ring, rows, A.cols)
