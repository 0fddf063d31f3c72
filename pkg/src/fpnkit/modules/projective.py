"""Projectivity, projective dimension at most one, and character duals."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedRingError
from ..linalg.matrix import RingMatrix
from ..linalg.solve import kernel_basis, prune_generators, solve_linear
from ..rings import RingKind, ring_ops
from .presentation import Presentation
from .resolution import syzygy


@dataclass(frozen=True)
class ProjectivityResult:
    """``section`` is ``X = I + A Y``: an idempotent endomorphism of ``R^g``
    killing the relations, i.e. a splitting of ``R^g -> M`` (None if none)."""

    projective: bool
    section: RingMatrix | None
    window: int | None = None
    obstruction: str | None = None

    def __bool__(self):
        return self.projective


def is_projective(P: Presentation, window: int | None = None) -> ProjectivityResult:
    """Decide whether ``coker(A)`` is projective.

    The identity lifts along ``R^g -> M`` iff ``A Y A = -A`` has a solution
    ``Y``.  Over windowed rings the projection onto a window containing every
    support is a ring map fixing ``A``, so solving there is exact.
    """
    A = P.relations
    ring = P.ring
    g, p = A.rows, A.cols
    R = ring_ops(ring)
    if ring.windowed:
        window = max(window or 0, A.support_width())
    # unknown Y[j][k] (p x g) at index j*g + k; equation (i, l): sum A_ij Y_jk A_kl = -A_il
    rows, rhs = [], []
    for i in range(g):
        for l in range(p):
            row = [R.zero] * (p * g)
            for j in range(p):
                a = A[i, j]
                if not a:
                    continue
                for k in range(g):
                    b = A[k, l]
                    if b:
                        row[j * g + k] = R.mul(a, b)
            rows.append(row)
            rhs.append(R.neg(A[i, l]))
    lin = RingMatrix.from_rows(ring, rows, p * g)
    sol = solve_linear(lin, rhs, window if ring.windowed else None)
    if not sol.solvable:
        return ProjectivityResult(False, None, window if ring.windowed else None, sol.obstruction)
    Y = RingMatrix.from_rows(ring, [[sol.particular[j * g + k] for k in range(g)]
                                    for j in range(p)], g)
    X = RingMatrix.identity(ring, g) + A @ Y
    return ProjectivityResult(True, X, window if ring.windowed else None)


def pd_at_most_one(P: Presentation, window: int | None = None) -> bool:
    """``pd M <= 1`` iff the first syzygy is projective."""
    return is_projective(syzygy(P, window), window).projective


def character_dual(P: Presentation) -> Presentation:
    """``M^+ = Hom(M, Z/n)``, presented over ``Z/n``.

    A character is a row vector ``y`` with ``y A = 0``, so ``M^+ = ker(A^T)``;
    the result presents that submodule of ``(Z/n)^g``.
    """
    ring = P.ring
    if ring.kind is not RingKind.MODULAR:
        raise UnsupportedRingError(f"character duals are only computed over Z/n, not {ring}")
    g = P.generators
    gens = prune_generators(ring, g, kernel_basis(P.relations.T))
    G = RingMatrix.from_columns(ring, gens, g)
    rel = prune_generators(ring, G.cols, kernel_basis(G))
    return Presentation(ring, G.cols, RingMatrix.from_columns(ring, rel, G.cols),
                        f"({P.label or 'M'})+")
