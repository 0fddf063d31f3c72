"""Finitely presented modules ``coker(R^p -> R^g)`` and finitely generated submodules."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionError, RingMismatchError
from ..linalg.matrix import RingMatrix
from ..rings import RingId, ring_ops


@dataclass(frozen=True)
class Presentation:
    """The cokernel of ``relations`` (a ``generators x p`` matrix).

    ``window`` is set when the relations are only the window-restricted part
    of a non finitely generated relation module.
    """

    ring: RingId
    generators: int
    relations: RingMatrix
    label: str = ""
    window: int | None = None

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingMismatchError(f"relations over {self.relations.ring}, module over {self.ring}")
        if self.relations.rows != self.generators:
            raise DimensionError(
                f"{self.generators} generators but relations have {self.relations.rows} rows"
            )

    @classmethod
    def free(cls, ring: RingId, rank: int, label: str = "") -> Presentation:
        return cls(ring, rank, RingMatrix.zeros(ring, rank, 0), label or f"R^{rank}")

    @classmethod
    def cyclic(cls, ring: RingId, *relations, label: str = "") -> Presentation:
        """``R / (r1, r2, ...)``."""
        return cls(ring, 1, RingMatrix.from_rows(ring, [list(relations)], len(relations)), label)

    @classmethod
    def from_matrix(cls, A: RingMatrix, label: str = "", window: int | None = None) -> Presentation:
        return cls(A.ring, A.rows, A, label, window)

    @property
    def num_relations(self) -> int:
        return self.relations.cols

    @property
    def is_free_presentation(self) -> bool:
        return self.relations.is_zero()

    def support_width(self) -> int:
        return self.relations.support_width()

    def with_label(self, label: str) -> Presentation:
        return Presentation(self.ring, self.generators, self.relations, label, self.window)

    def direct_sum(self, other: Presentation) -> Presentation:
        if other.ring != self.ring:
            raise RingMismatchError("direct sum of modules over different rings")
        label = f"{self.label or 'M'} + {other.label or 'N'}"
        window = max((w for w in (self.window, other.window) if w is not None), default=None)
        return Presentation(self.ring, self.generators + other.generators,
                            self.relations.block_diag(other.relations), label, window)

    def __str__(self):
        return self.label or f"coker({self.generators}x{self.num_relations})"


@dataclass(frozen=True)
class ImageModule:
    """The submodule of ``R^rows`` generated by the columns of ``generators``.

    Ideals are the case ``rows == 1``.  No relation module is fixed in advance:
    its first syzygy is ``ker(generators)``, which need not be finitely
    generated.
    """

    generators: RingMatrix
    label: str = ""

    @property
    def ring(self) -> RingId:
        return self.generators.ring

    @classmethod
    def ideal(cls, ring: RingId, *elements, label: str = "") -> ImageModule:
        R = ring_ops(ring)
        return cls(RingMatrix.from_rows(ring, [[R.coerce(x) for x in elements]], len(elements)),
                   label)

    def __str__(self):
        return self.label or f"im({self.generators.rows}x{self.generators.cols})"


def direct_sum(*modules: Presentation) -> Presentation:
    out = modules[0]
    for m in modules[1:]:
        out = out.direct_sum(m)
    return out
