"""Hom, Ext, Tor and tensor products through the additive model of the ring.

A module ``N = coker(B)`` with ``h`` generators is represented, after
choosing a window ``w``, by the abelian group ``R_w^h / (B R_w + torsion)``.
Tuples ``N^a`` are ``h x a`` matrices; ``Hom(d, N)`` is ``X -> X d`` and
``d (x) N`` is ``X -> X d^T``.

Over ``Z`` and ``Z/n`` this is exact.  Over ``U`` and ``SQ[k]``, with all data
supported in ``[1..W]``, every group splits as the window-``W`` part plus one
identical copy per coordinate beyond ``W``, so vanishing is decided exactly at
the probe window ``W + 1``; the invariant factors reported there describe
that probe, not the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import RingMismatchError, UnsupportedRingError
from ..linalg.homology import HomologyResult, PresentedGroup, homology
from ..linalg.matrix import RingMatrix
from ..rings import RingId, RingKind, ring_ops
from .presentation import Presentation
from .resolution import resolve


@dataclass(frozen=True)
class AbGroupValue:
    """An Ext/Tor/Hom value.

    ``invariant_factors`` follow the divisibility chain with ``0`` for free
    summands.  ``witness`` is a nonzero class representative given as a
    ``rows x cols`` tuple-of-rows of ring elements (None for the zero group).
    ``window`` is the probe window over windowed rings; ``exact`` is False when
    the resolution used had to be window-restricted.
    """

    ring: RingId
    invariant_factors: tuple
    witness: tuple | None = None
    window: int | None = None
    exact: bool = True
    generators: tuple = ()

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = ["Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors]
        if self.ring.kind is RingKind.SQUARE_ZERO and self.ring.field == "Q":
            parts = ["Q" for _ in parts]
        text = " + ".join(parts)
        if self.window is not None:
            text += f" (probe window {self.window})"
        return text


# ---------------------------------------------------------------------------
# additive linearisation


def _check_same_ring(*mods):
    rings = {m.ring for m in mods}
    if len(rings) != 1:
        raise RingMismatchError(f"modules over different rings: {sorted(map(str, rings))}")


def probe_window(ring: RingId, *matrices) -> int:
    if not ring.windowed:
        return 0
    return max((m.support_width() for m in matrices), default=0) + 1


def tuple_group(B: RingMatrix, copies: int, window: int) -> PresentedGroup:
    """``N^copies`` for ``N = coker(B)`` as ``base^dim / relations``."""
    R = ring_ops(B.ring)
    h = B.rows
    s = R.additive_dim(window)
    dim = copies * h * s
    rels = []
    mats = {}
    for j in range(copies):
        for l in range(B.cols):
            for t in range(s):
                v = [0] * dim
                nz = False
                for i in range(h):
                    x = B[i, l]
                    if not x:
                        continue
                    if x not in mats:
                        mats[x] = R.mult_matrix(x, window)
                    M = mats[x]
                    base = (j * h + i) * s
                    for u in range(s):
                        if M[u][t]:
                            v[base + u] = M[u][t]
                            nz = True
                if nz:
                    rels.append(v)
    for u, order in enumerate(R.additive_orders(window)):
        if order:
            for blk in range(copies * h):
                v = [0] * dim
                v[blk * s + u] = order
                rels.append(v)
    return PresentedGroup(dim, rels, R.base)


def right_mult(d: RingMatrix, h: int, window: int) -> list[list]:
    """Rows of the linear map ``X -> X d`` from ``h x d.rows`` to ``h x d.cols``."""
    R = ring_ops(d.ring)
    s = R.additive_dim(window)
    n_in, n_out = d.rows * h * s, d.cols * h * s
    F = [[0] * n_in for _ in range(n_out)]
    for j in range(d.rows):
        for l in range(d.cols):
            x = d[j, l]
            if not x:
                continue
            M = R.mult_matrix(x, window)
            for i in range(h):
                bi, bo = (j * h + i) * s, (l * h + i) * s
                for u in range(s):
                    row = F[bo + u]
                    for v in range(s):
                        if M[u][v]:
                            row[bi + v] += M[u][v]
    return F


def _images(F, n_in):
    """Columns of ``F`` (images of the unit vectors)."""
    return [[row[k] for row in F] for k in range(n_in)]


def _witness(B: RingMatrix, copies: int, window: int, vec) -> tuple:
    R = ring_ops(B.ring)
    s = R.additive_dim(window)
    h = B.rows
    out = [[None] * copies for _ in range(h)]
    for j in range(copies):
        for i in range(h):
            base = (j * h + i) * s
            out[i][j] = R.from_additive(list(vec[base:base + s]), window)
    return tuple(tuple(r) for r in out)


def _value(ring, res: HomologyResult, B, copies, window, exact) -> AbGroupValue:
    wit = _witness(B, copies, window, res.witness) if res.witness is not None else None
    return AbGroupValue(ring, res.invariant_factors, wit,
                        window if ring.windowed else None, exact,
                        tuple(d for d, _ in res.generators))


def _resolution(P: Presentation, depth: int, windows):
    res = resolve(P, depth, windows)
    return res.differentials, res.exact


# ---------------------------------------------------------------------------
# public operations


def ext_group(P: Presentation, Q: Presentation, i: int, windows=()) -> AbGroupValue:
    """``Ext^i(P, Q)``: cohomology of ``Hom(F_*, Q)`` at ``F_i``."""
    if i < 0:
        raise ValueError("degree must be nonnegative")
    _check_same_ring(P, Q)
    ring = P.ring
    diffs, exact = _resolution(P, i + 1, windows)
    exact = exact and Q.window is None
    ranks = (diffs[0].rows,) + tuple(d.cols for d in diffs)
    B = Q.relations
    w = probe_window(ring, B, *diffs)
    h = B.rows
    C = tuple_group(B, ranks[i], w)
    D = tuple_group(B, ranks[i + 1], w)
    f = right_mult(diffs[i], h, w)
    if i == 0:
        bounds = []
    else:
        g = right_mult(diffs[i - 1], h, w)
        bounds = _images(g, ranks[i - 1] * h * ring_ops(ring).additive_dim(w))
    res = homology(C, f, D, bounds)
    return _value(ring, res, B, ranks[i], w, exact)


def hom_module(P: Presentation, Q: Presentation) -> AbGroupValue:
    """``Hom(P, Q)``; the witness is the images of the generators of ``P``."""
    return ext_group(P, Q, 0)


def tor_group(P: Presentation, Q: Presentation, i: int, windows=()) -> AbGroupValue:
    """``Tor_i(P, Q)``: homology of ``F_* (x) Q`` at ``F_i``."""
    if i < 0:
        raise ValueError("degree must be nonnegative")
    _check_same_ring(P, Q)
    ring = P.ring
    diffs, exact = _resolution(P, i + 1, windows)
    exact = exact and Q.window is None
    ranks = (diffs[0].rows,) + tuple(d.cols for d in diffs)
    B = Q.relations
    w = probe_window(ring, B, *diffs)
    h = B.rows
    s = ring_ops(ring).additive_dim(w)
    C = tuple_group(B, ranks[i], w)
    if i == 0:
        D = PresentedGroup(0, [], C.base)
        f = []
    else:
        D = tuple_group(B, ranks[i - 1], w)
        f = right_mult(diffs[i - 1].T, h, w)
    g = right_mult(diffs[i].T, h, w)
    bounds = _images(g, ranks[i + 1] * h * s)
    res = homology(C, f, D, bounds)
    return _value(ring, res, B, ranks[i], w, exact)


def tensor_product(P: Presentation, Q: Presentation) -> AbGroupValue:
    return tor_group(P, Q, 0)


def module_invariants(P: Presentation) -> tuple:
    """Invariant factors of the underlying abelian group (``Z`` and ``Z/n`` only)."""
    if P.ring.windowed:
        raise UnsupportedRingError(f"isomorphism invariants are not available over {P.ring}")
    R1 = Presentation.free(P.ring, 1)
    return tensor_product(R1, P).invariant_factors


def isomorphic(P: Presentation, Q: Presentation) -> bool:
    """Module isomorphism over ``Z`` or ``Z/n``.

    Over ``Z/n`` a module is an abelian group killed by ``n``, so abelian
    invariants decide isomorphism in both cases.
    """
    _check_same_ring(P, Q)
    return module_invariants(P) == module_invariants(Q)


def extends_along(sub: RingMatrix, f: RingMatrix, M: Presentation, window: int | None = None) -> bool:
    """Does ``f: P' -> M`` extend along ``P' -> R^k`` given by the columns of ``sub``?

    ``f`` lists the images (``h x p'`` over ``M``'s generators).  An extension
    is an ``h x k`` matrix ``X`` with ``X sub - f`` in the column span of the
    relations of ``M``; decided by one linear solve.
    """
    from ..linalg.solve import solve_linear

    ring = M.ring
    h, k, p = M.generators, sub.rows, sub.cols
    q = M.relations.cols
    R = ring_ops(ring)
    # unknowns: X (h*k entries, row-major) then Z (q*p entries): X sub + B Z = f
    rows, rhs = [], []
    for i in range(h):
        for c in range(p):
            row = [R.zero] * (h * k + q * p)
            for j in range(k):
                row[i * k + j] = sub[j, c]
            for t in range(q):
                row[h * k + t * p + c] = M.relations[i, t]
            rows.append(row)
            rhs.append(f[i, c])
    A = RingMatrix.from_rows(ring, rows, h * k + q * p)
    if ring.windowed and window is None:
        window = max(A.support_width(), f.support_width())
    return solve_linear(A, rhs, window).solvable


def left_mult(Phi: RingMatrix, window: int) -> list[list]:
    """Rows of ``x -> Phi x`` from ``R_w^{Phi.cols}`` to ``R_w^{Phi.rows}``."""
    R = ring_ops(Phi.ring)
    s = R.additive_dim(window)
    F = [[0] * (Phi.cols * s) for _ in range(Phi.rows * s)]
    for i2 in range(Phi.rows):
        for i in range(Phi.cols):
            x = Phi[i2, i]
            if not x:
                continue
            M = R.mult_matrix(x, window)
            for u in range(s):
                for v in range(s):
                    if M[u][v]:
                        F[i2 * s + u][i * s + v] += M[u][v]
    return F


@dataclass(frozen=True)
class ModuleMap:
    """``source -> target`` sending generator ``j`` to column ``j`` of ``matrix``."""

    source: Presentation
    target: Presentation
    matrix: RingMatrix
    kind: str = "map"

    def __post_init__(self):
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise ValueError(
                f"map matrix must be {self.target.generators}x{self.source.generators}, "
                f"got {self.matrix.rows}x{self.matrix.cols}"
            )

    def _window(self) -> int:
        return probe_window(self.source.ring, self.matrix, self.source.relations,
                           self.target.relations)

    def is_well_defined(self) -> bool:
        from ..linalg.solve import solve_linear

        ring = self.source.ring
        w = max(self.matrix.support_width(), self.source.relations.support_width(),
                self.target.relations.support_width()) if ring.windowed else None
        for col in (self.matrix @ self.source.relations).columns():
            if not solve_linear(self.target.relations, col, w).solvable:
                return False
        return True

    def kernel(self) -> AbGroupValue:
        w = self._window()
        G = tuple_group(self.source.relations, 1, w)
        H = tuple_group(self.target.relations, 1, w)
        res = homology(G, left_mult(self.matrix, w), H, [])
        return _value(self.source.ring, res, self.source.relations, 1, w, True)

    def cokernel(self) -> AbGroupValue:
        w = self._window()
        H = tuple_group(self.target.relations, 1, w)
        F = left_mult(self.matrix, w)
        n_in = self.source.generators * ring_ops(self.source.ring).additive_dim(w)
        res = homology(H, [], PresentedGroup(0, [], H.base), _images(F, n_in))
        return _value(self.source.ring, res, self.target.relations, 1, w, True)

    def is_injective(self) -> bool:
        return self.kernel().is_zero

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero
