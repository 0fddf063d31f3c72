"""Finitely generated abelian groups ``Z^d / L`` and homology of maps between them.

Over ``Q`` (``base="Q"``) the same objects are vector spaces ``Q^d / L`` and
only dimensions are computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rational import q_kernel, q_rank
from .smith import int_kernel, int_solve, lattice_basis, smith


@dataclass
class PresentedGroup:
    """``base^dim`` modulo the span of ``relations`` (column vectors)."""

    dim: int
    relations: list = field(default_factory=list)
    base: str = "Z"


@dataclass(frozen=True)
class HomologyResult:
    """``ker f / im g`` as invariant factors (``0`` marks a free summand).

    ``witness`` is a cycle whose class is nonzero, ``None`` when the
    homology vanishes.  ``generators`` pairs every cyclic summand with a cycle
    representative.
    """

    invariant_factors: tuple
    witness: tuple | None
    generators: tuple = ()

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors


def _cols_to_rows(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


def group_invariants(G: PresentedGroup) -> HomologyResult:
    """Invariant factors of ``G`` itself."""
    ident = [[1 if i == j else 0 for j in range(G.dim)] for i in range(G.dim)]
    target = PresentedGroup(0, [], G.base)
    return homology(G, ident[:0], target, [])


def homology(C: PresentedGroup, f, D: PresentedGroup, boundaries) -> HomologyResult:
    """Homology at ``C`` of ``B --g--> C --f--> D``.

    ``f`` is a ``D.dim x C.dim`` integer (or rational) matrix given as rows;
    ``boundaries`` are the images of the generators of ``B`` (column vectors
    in ``base^C.dim``).  Both maps must be well defined on the quotients.
    """
    if C.base == "Q":
        return _homology_q(C, f, D, boundaries)
    n, m = C.dim, D.dim
    # cycles: x with f x in span(D.relations)
    stacked = [list(f[i]) + [-r[i] for r in D.relations] for i in range(m)] if m else []
    if m:
        ker = int_kernel(stacked, n + len(D.relations))
        cycles = lattice_basis([v[:n] for v in ker], n)
    else:
        cycles = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    k = len(cycles)
    if k == 0:
        return HomologyResult((), None)
    subs = [list(v) for v in boundaries] + [list(r) for r in C.relations]
    Kmat = _cols_to_rows(cycles, n)
    coords = []
    for v in subs:
        y, _ = int_solve(Kmat, v, k)
        if y is None:
            raise ValueError("boundary is not a cycle: the sequence is not a complex")
        coords.append(y)
    if coords:
        res = smith(_cols_to_rows(coords, k), k, len(coords))
        diag = [res.diagonal[i] if i < len(res.diagonal) else 0 for i in range(k)]
        basis_change = res.Uinv
    else:
        diag = [0] * k
        basis_change = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    factors, gens = [], []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        coeff = [basis_change[r][i] for r in range(k)]
        vec = tuple(sum(coeff[r] * cycles[r][t] for r in range(k)) for t in range(n))
        factors.append(d)
        gens.append((d, vec))
    order = sorted(range(len(factors)), key=lambda i: (factors[i] == 0, factors[i]))
    factors = tuple(factors[i] for i in order)
    gens = tuple(gens[i] for i in order)
    return HomologyResult(factors, gens[0][1] if gens else None, gens)


def _homology_q(C, f, D, boundaries) -> HomologyResult:
    n, m = C.dim, D.dim
    if m:
        stacked = [list(f[i]) + [-r[i] for r in D.relations] for i in range(m)]
        cycles = [v[:n] for v in q_kernel(stacked, n + len(D.relations))]
    else:
        cycles = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    subs = [list(v) for v in boundaries] + [list(r) for r in C.relations]
    base_rank = q_rank(subs, n) if subs else 0
    dim = q_rank(cycles, n) - base_rank if cycles else 0
    witness = None
    span = list(subs)
    rank = base_rank
    gens = []
    for v in cycles:
        if q_rank(span + [v], n) > rank:
            span.append(v)
            rank += 1
            gens.append((0, tuple(v)))
            witness = witness or tuple(v)
    return HomologyResult((0,) * dim, witness, tuple(gens))
