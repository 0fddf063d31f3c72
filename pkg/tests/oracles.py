"""Brute-force reference computations, kept independent of the package internals."""

from __future__ import annotations

import itertools
import math
from functools import reduce


def det(M) -> int:
    """Laplace expansion along the first row; fine for n <= 4."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * M[0][j] * det(minor)
    return total


def determinantal_divisors(A, m: int, n: int) -> list[int]:
    """``d_k`` = gcd of all k x k minors, for k = 1..min(m, n)."""
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def invariant_factors_by_minors(A, m: int, n: int) -> list[int]:
    d = determinantal_divisors(A, m, n)
    out, prev = [], 1
    for dk in d:
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def span_mod(rows, n: int, ncols: int) -> frozenset:
    """Every Z/n-combination of ``rows``."""
    seen = {(0,) * ncols}
    frontier = list(seen)
    gens = [tuple(x % n for x in r) for r in rows]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % n for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


def closure(gens, add, zero) -> frozenset:
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = add(v, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


class FiniteModule:
    """``(Z/n)^g`` modulo the span of the relation columns, by enumeration."""

    def __init__(self, n: int, g: int, relation_columns):
        self.n, self.g = n, g
        self.rel = [tuple(c) for c in relation_columns]
        self.sub = span_mod(self.rel, n, g)
        self._canon = {}
        elems = set()
        for v in itertools.product(range(n), repeat=g):
            c = min(tuple((a + b) % n for a, b in zip(v, s)) for s in self.sub)
            self._canon[v] = c
            elems.add(c)
        self.elements = sorted(elems)

    def canon(self, v):
        return self._canon[tuple(x % self.n for x in v)]

    def add(self, u, v):
        return self.canon([a + b for a, b in zip(u, v)])

    def scale(self, c, v):
        return self.canon([c * a for a in v])

    @property
    def zero(self):
        return (0,) * self.g

    @property
    def order(self) -> int:
        return len(self.elements)

    def combo(self, coeffs, vectors):
        acc = [0] * self.g
        for c, v in zip(coeffs, vectors):
            for i, x in enumerate(v):
                acc[i] += c * x
        return self.canon(acc)


def hom_count(M: FiniteModule, N: FiniteModule) -> int:
    """Number of R-linear maps M -> N: generator images killing every relation."""
    count = 0
    for ys in itertools.product(N.elements, repeat=M.g):
        if all(N.combo(col, ys) == N.zero for col in M.rel):
            count += 1
    return count


def _relations_among(cols, n: int, g: int):
    r = len(cols)
    return [lam for lam in itertools.product(range(n), repeat=r)
            if all(sum(l * c[i] for l, c in zip(lam, cols)) % n == 0 for i in range(g))]


def ext1_order(M: FiniteModule, N: FiniteModule) -> int:
    """|Ext^1(M, N)| = |Hom(K, N)| / |restrictions of Hom(F, N)|, with K = relation span in F."""
    cols = M.rel
    if not cols:
        return 1
    lams = _relations_among(cols, M.n, M.g)
    hom_k = sum(1 for ys in itertools.product(N.elements, repeat=len(cols))
                if all(N.combo(lam, ys) == N.zero for lam in lams))
    restricted = set()
    for zs in itertools.product(N.elements, repeat=M.g):
        restricted.add(tuple(N.combo(c, zs) for c in cols))
    return hom_k // len(restricted)


def tensor_order(g: int, relation_columns, N: FiniteModule) -> int:
    """|coker(rel) (x) N| = |N^g / <(c_j y)_j : c a relation, y in N>|."""
    gens = []
    for c in relation_columns:
        for y in N.elements:
            gens.append(tuple(N.scale(cj, y) for cj in c))
    add = lambda u, v: tuple(N.add(a, b) for a, b in zip(u, v))  # noqa: E731
    sub = closure(gens, add, tuple(N.zero for _ in range(g)))
    return N.order ** g // len(sub)


def tor1_order(M: FiniteModule, N: FiniteModule) -> int:
    """From 0 -> Tor_1 -> K(x)N -> F(x)N -> M(x)N -> 0 with K presented by its own relations."""
    cols = M.rel
    if not cols:
        return 1
    lams = _relations_among(cols, M.n, M.g)
    k_tensor = tensor_order(len(cols), lams, N)
    m_tensor = tensor_order(M.g, cols, N)
    return k_tensor * m_tensor // N.order ** M.g


def product(xs) -> int:
    return reduce(lambda a, b: a * b, xs, 1)
