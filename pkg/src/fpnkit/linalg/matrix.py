"""Dense matrices over a supported ring, plus their text format.

Text format::

    <ring> <rows> <cols>
    e11 | e12 | ...
    e21 | e22 | ...

Entries use the element syntax of the ring; ``|`` separates entries of a row.
A matrix with zero columns has ``rows`` empty lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionError, ParseError, RingMismatchError
from ..rings import RingId, ring_ops


@dataclass(frozen=True)
class RingMatrix:
    ring: RingId
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # construction -----------------------------------------------------------
    @classmethod
    def from_rows(cls, ring: RingId, rows, cols: int | None = None) -> RingMatrix:
        R = ring_ops(ring)
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(ring, len(rows), cols, tuple(R.coerce(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, ring: RingId, columns, rows: int) -> RingMatrix:
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise DimensionError("column length mismatch")
        return cls.from_rows(ring, [[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, ring: RingId, rows: int, cols: int) -> RingMatrix:
        z = ring_ops(ring).zero
        return cls(ring, rows, cols, (z,) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingId, n: int) -> RingMatrix:
        R = ring_ops(ring)
        return cls(ring, n, n, tuple(R.one if i == j else R.zero for i in range(n) for j in range(n)))

    # access -----------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    # algebra ----------------------------------------------------------------
    def _check_ring(self, other: RingMatrix):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} matrix combined with {other.ring} matrix")

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        R = ring_ops(self.ring)
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                acc = R.zero
                for k in range(self.cols):
                    a = row[k]
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = R.add(acc, R.mul(a, b))
                out.append(acc)
        return RingMatrix(self.ring, self.rows, other.cols, tuple(out))

    def __add__(self, other: RingMatrix) -> RingMatrix:
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        R = ring_ops(self.ring)
        return RingMatrix(self.ring, self.rows, self.cols,
                          tuple(R.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> RingMatrix:
        R = ring_ops(self.ring)
        return RingMatrix(self.ring, self.rows, self.cols, tuple(R.neg(a) for a in self.entries))

    def __sub__(self, other: RingMatrix) -> RingMatrix:
        return self + (-other)

    def apply(self, vector) -> tuple:
        """Matrix times a column vector given as a sequence."""
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for {self.shape} matrix")
        col = RingMatrix.from_columns(self.ring, [vector], self.cols)
        return (self @ col).column(0)

    def transpose(self) -> RingMatrix:
        return RingMatrix(self.ring, self.cols, self.rows,
                          tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def hstack(self, other: RingMatrix) -> RingMatrix:
        self._check_ring(other)
        if self.rows != other.rows:
            raise DimensionError("row count mismatch in hstack")
        return RingMatrix.from_rows(self.ring, [list(self.row(i)) + list(other.row(i))
                                                for i in range(self.rows)], self.cols + other.cols)

    def vstack(self, other: RingMatrix) -> RingMatrix:
        self._check_ring(other)
        if self.cols != other.cols:
            raise DimensionError("column count mismatch in vstack")
        return RingMatrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def block_diag(self, other: RingMatrix) -> RingMatrix:
        self._check_ring(other)
        z = ring_ops(self.ring).zero
        rows = [list(self.row(i)) + [z] * other.cols for i in range(self.rows)]
        rows += [[z] * self.cols + list(other.row(i)) for i in range(other.rows)]
        return RingMatrix.from_rows(self.ring, rows, self.cols + other.cols)

    def select_columns(self, idx) -> RingMatrix:
        idx = list(idx)
        return RingMatrix.from_rows(self.ring, [[self[i, j] for j in idx] for i in range(self.rows)],
                                    len(idx))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def support_width(self) -> int:
        R = ring_ops(self.ring)
        return max((R.support_width(x) for x in self.entries), default=0)

    # text -------------------------------------------------------------------
    def to_text(self) -> str:
        R = ring_ops(self.ring)
        lines = [f"{self.ring} {self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append(" | ".join(R.format(x) for x in self.row(i)))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def parse_matrix(text: str, first_line: int = 1) -> RingMatrix:
    """Inverse of :meth:`RingMatrix.to_text`."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    matrix, used = parse_matrix_lines(lines, first_line)
    if used != len(lines):
        raise ParseError("trailing content after matrix", first_line + used, 1)
    return matrix


def parse_matrix_lines(lines: list[str], first_line: int = 1) -> tuple[RingMatrix, int]:
    """Parse one matrix from the front of ``lines``; returns it and lines consumed."""
    if not lines:
        raise ParseError("missing matrix header", first_line, 1)
    header = lines[0].split()
    if len(header) != 3:
        raise ParseError("matrix header must be '<ring> <rows> <cols>'", first_line, 1)
    try:
        rid = RingId.parse(header[0])
    except ValueError as exc:
        raise ParseError(str(exc), first_line, 1) from None
    try:
        rows, cols = int(header[1]), int(header[2])
    except ValueError:
        raise ParseError("matrix dimensions must be integers", first_line,
                         len(header[0]) + 2) from None
    if rows < 0 or cols < 0:
        raise ParseError("negative matrix dimension", first_line, len(header[0]) + 2)
    R = ring_ops(rid)
    if len(lines) < 1 + rows:
        raise ParseError(f"expected {rows} matrix rows", first_line + len(lines), 1)
    data = []
    for r in range(rows):
        lineno = first_line + 1 + r
        text = lines[1 + r]
        if cols == 0:
            if text.strip():
                raise ParseError("row of a zero-column matrix must be empty", lineno, 1)
            data.append([])
            continue
        parts = text.split("|")
        if len(parts) != cols:
            raise DimensionError(f"line {lineno}: expected {cols} entries, found {len(parts)}")
        row = []
        col = 1
        for part in parts:
            row.append(R.parse(part, lineno, col))
            col += len(part) + 1
        data.append(row)
    return RingMatrix.from_rows(rid, data, cols), 1 + rows
