"""Exact arithmetic for the four supported commutative rings.

``Z``         the integers (Python ints)
``Z/n``       residues mod n, stored reduced in ``[0, n)``
``U``         the unitification ``Z + (+)_i Z/2`` with
              ``(m, a)(n, b) = (mn, m*b + n*a + a*b)``
``SQ[k]``     ``k[x1, x2, ...] / (xi*xj)`` over ``k = F2`` or ``Q``

Elements of ``U`` and ``SQ[k]`` have finite support.  Supports of ``U`` are
bitmasks (bit ``i`` <-> index ``i``), so symmetric difference and intersection
are ``^`` and ``&`` and structural equality is canonical.

Each ring is reached through a :class:`Ring` bundle (``ring_ops``) that also
exposes the *additive model* of the ring restricted to a support window: a
finite basis over a base ring (``Z`` or ``Q``) with the additive order of every
basis vector and the matrix of multiplication by a fixed element.  All
homological computations reduce to linear algebra through this model.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DuplicateIndexError,
    InvalidRingError,
    ParseError,
    RingMismatchError,
)


# ---------------------------------------------------------------------------
# Ring identifiers


class RingKind(enum.Enum):
    INTEGERS = "Z"
    MODULAR = "Z/n"
    UNITIFICATION = "U"
    SQUARE_ZERO = "SQ"


FIELDS = ("F2", "Q")


@dataclass(frozen=True)
class RingId:
    kind: RingKind
    modulus: int | None = None
    field: str | None = None

    def __post_init__(self):
        if self.kind is RingKind.MODULAR:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise InvalidRingError(f"Z/n requires n >= 2, got {self.modulus!r}")
        elif self.modulus is not None:
            raise InvalidRingError(f"{self.kind.value} takes no modulus")
        if self.kind is RingKind.SQUARE_ZERO:
            if self.field not in FIELDS:
                raise InvalidRingError(f"unknown field {self.field!r}; expected F2 or Q")
        elif self.field is not None:
            raise InvalidRingError(f"{self.kind.value} takes no field")

    @classmethod
    def integers(cls) -> RingId:
        return cls(RingKind.INTEGERS)

    @classmethod
    def modular(cls, n: int) -> RingId:
        return cls(RingKind.MODULAR, modulus=n)

    @classmethod
    def unitification(cls) -> RingId:
        return cls(RingKind.UNITIFICATION)

    @classmethod
    def square_zero(cls, field: str = "F2") -> RingId:
        return cls(RingKind.SQUARE_ZERO, field=field)

    @classmethod
    def parse(cls, text: str) -> RingId:
        t = text.strip()
        if t == "Z":
            return cls.integers()
        if t == "U":
            return cls.unitification()
        m = re.fullmatch(r"Z/(-?\d+)", t)
        if m:
            return cls.modular(int(m.group(1)))
        m = re.fullmatch(r"SQ\[(\w+)\]", t)
        if m:
            return cls.square_zero(m.group(1))
        raise InvalidRingError(f"unknown ring {text!r}")

    def __str__(self) -> str:
        if self.kind is RingKind.MODULAR:
            return f"Z/{self.modulus}"
        if self.kind is RingKind.SQUARE_ZERO:
            return f"SQ[{self.field}]"
        return self.kind.value

    @property
    def windowed(self) -> bool:
        return self.kind in (RingKind.UNITIFICATION, RingKind.SQUARE_ZERO)


# ---------------------------------------------------------------------------
# Supports


def mask_of(indices) -> int:
    """Bitmask of a collection of positive indices (duplicates rejected)."""
    mask = 0
    for i in indices:
        i = int(i)
        if i < 1:
            raise ValueError(f"support indices are positive, got {i}")
        bit = 1 << i
        if mask & bit:
            raise ValueError(f"duplicate support index {i}")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def window_mask(bound: int) -> int:
    """Mask of ``[1..bound]``."""
    return ((1 << (bound + 1)) - 1) & ~1 if bound > 0 else 0


# ---------------------------------------------------------------------------
# Elements


@dataclass(frozen=True, slots=True)
class UElement:
    """An element ``(m, a)`` of the unitification ring; ``a`` is a support bitmask."""

    m: int
    a: int = 0

    @classmethod
    def of(cls, m: int, support=()) -> UElement:
        return cls(int(m), mask_of(support))

    @property
    def support(self) -> tuple[int, ...]:
        return indices_of(self.a)

    def _coerce(self, other):
        if isinstance(other, UElement):
            return other
        if isinstance(other, int):
            return UElement(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return UElement(self.m + o.m, self.a ^ o.a)

    __radd__ = __add__

    def __neg__(self):
        return UElement(-self.m, self.a)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return UElement(self.m - o.m, self.a ^ o.a)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return u_mul(self, o)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.m or self.a)

    def __str__(self):
        return format_u(self)


def u_mul(x: UElement, y: UElement) -> UElement:
    """``(m,a)(n,b) = (mn, m*b (+) n*a (+) (a & b))``; ``m*b`` is ``b`` for odd ``m``."""
    a = (y.a if x.m & 1 else 0) ^ (x.a if y.m & 1 else 0) ^ (x.a & y.a)
    return UElement(x.m * y.m, a)


def _field_scalar(field: str, c):
    t = type(c)
    if t is int:
        return c & 1 if field == "F2" else Fraction(c)
    if t is Fraction and field == "Q":
        return c
    if field == "F2":
        if isinstance(c, Fraction):
            if c.denominator % 2 == 0:
                raise ValueError(f"{c} is not defined in F2")
            c = c.numerator
        return int(c) % 2
    return Fraction(c)


@dataclass(frozen=True, slots=True)
class SqZeroElement:
    """``c0 + sum ci*xi`` in ``k[x1, x2, ...]/(xi*xj)``; ``coeffs`` sorted, nonzero."""

    c0: object
    coeffs: tuple = ()
    field: str = "F2"

    @classmethod
    def of(cls, c0=0, coeffs=None, field: str = "F2") -> SqZeroElement:
        items = {}
        for i, c in dict(coeffs or {}).items():
            c = _field_scalar(field, c)
            if c:
                items[int(i)] = c
        return cls(_field_scalar(field, c0), tuple(sorted(items.items())), field)

    @classmethod
    def _make(cls, c0, merged: dict, field: str) -> SqZeroElement:
        # values are already field scalars (ints for F2, Fractions for Q)
        if field == "F2":
            return cls(c0 & 1, tuple(sorted((i, 1) for i, c in merged.items() if c & 1)), field)
        return cls(c0, tuple(sorted((i, c) for i, c in merged.items() if c)), field)

    @classmethod
    def var(cls, i: int, field: str = "F2") -> SqZeroElement:
        return cls.of(0, {i: 1}, field)

    def _coerce(self, other):
        if isinstance(other, SqZeroElement):
            if other.field != self.field:
                raise RingMismatchError(f"SQ[{self.field}] vs SQ[{other.field}]")
            return other
        if isinstance(other, (int, Fraction)):
            return SqZeroElement.of(other, field=self.field)
        return NotImplemented

    def _combine(self, other, sign):
        merged = dict(self.coeffs)
        for i, c in other.coeffs:
            merged[i] = merged.get(i, 0) + sign * c
        return SqZeroElement._make(self.c0 + sign * other.c0, merged, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self._combine(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self._combine(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o._combine(self, -1)

    def __neg__(self):
        return SqZeroElement._make(-self.c0, {i: -c for i, c in self.coeffs}, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return sq_mul(self, o)

    __rmul__ = __mul__

    def coefficient(self, i: int):
        for j, c in self.coeffs:
            if j == i:
                return c
        return _field_scalar(self.field, 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coeffs)

    def __bool__(self):
        return bool(self.c0) or bool(self.coeffs)

    def __str__(self):
        return format_sq(self)


def sq_mul(x: SqZeroElement, y: SqZeroElement) -> SqZeroElement:
    """``(c0 + v)(d0 + w) = c0*d0 + c0*w + d0*v``; the ``v*w`` term vanishes."""
    if x.field != y.field:
        raise RingMismatchError(f"SQ[{x.field}] vs SQ[{y.field}]")
    merged = {}
    for i, c in x.coeffs:
        merged[i] = c * y.c0
    for i, c in y.coeffs:
        merged[i] = merged.get(i, 0) + x.c0 * c
    return SqZeroElement._make(x.c0 * y.c0, merged, x.field)


# ---------------------------------------------------------------------------
# Text syntax


_INT = re.compile(r"\s*([+-]?\d+)\s*")


def format_u(x: UElement) -> str:
    return f"({x.m}; {','.join(map(str, x.support))})"


def parse_u(text: str, line: int = 1, column: int = 1) -> UElement:
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    col = column + lead
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"expected '(m; i1,...)', got {s!r}", line, col)
    body = s[1:-1]
    if body.count(";") != 1:
        raise ParseError("expected exactly one ';' in unitification element", line, col)
    head, tail = body.split(";")
    if not _INT.fullmatch(head):
        raise ParseError(f"bad integer part {head.strip()!r}", line, col + 1)
    m = int(head)
    seen = []
    offset = col + 2 + len(head)
    if tail.strip():
        for part in tail.split(","):
            if not re.fullmatch(r"\s*\d+\s*", part) or int(part) < 1:
                raise ParseError(f"bad support index {part.strip()!r}", line, offset)
            i = int(part)
            if i in seen:
                raise DuplicateIndexError(f"duplicate support index {i}", line, offset)
            seen.append(i)
            offset += len(part) + 1
    return UElement.of(m, seen)


def _format_scalar(c) -> str:
    return str(c)


def format_sq(x: SqZeroElement) -> str:
    terms = []
    if x.c0:
        terms.append(_format_scalar(x.c0))
    for i, c in x.coeffs:
        terms.append(f"x{i}" if c == 1 else f"{_format_scalar(c)}*x{i}")
    return " + ".join(terms) if terms else "0"


_SQ_TERM = re.compile(r"\s*(?:([+-]?\d+(?:/\d+)?)\s*\*\s*)?(-)?x(\d+)\s*|\s*([+-]?\d+(?:/\d+)?)\s*")


def parse_sq(text: str, field: str, line: int = 1, column: int = 1) -> SqZeroElement:
    c0 = 0
    coeffs: dict[int, object] = {}
    offset = column
    for part in text.split("+"):
        m = _SQ_TERM.fullmatch(part)
        if not m or not part.strip():
            raise ParseError(f"bad square-zero term {part.strip()!r}", line, offset)
        if m.group(3) is not None:
            i = int(m.group(3))
            if i < 1:
                raise ParseError("variable indices start at 1", line, offset)
            if i in coeffs:
                raise DuplicateIndexError(f"duplicate variable x{i}", line, offset)
            c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            if m.group(2):
                c = -c
            coeffs[i] = c
        else:
            c0 += Fraction(m.group(4))
        offset += len(part) + 1
    try:
        return SqZeroElement.of(c0, coeffs, field)
    except ValueError as exc:
        raise ParseError(str(exc), line, column) from None


# ---------------------------------------------------------------------------
# Ring bundles


class Ring:
    """Arithmetic bundle for one :class:`RingId`.

    Besides the ring operations it describes the additive model over the base
    ring ``self.base`` (``"Z"`` or ``"Q"``).  For windowed rings the model of
    ``R`` restricted to supports in ``[1..w]`` has basis ``1, t1, ..., tw``.
    """

    base = "Z"

    def __init__(self, rid: RingId):
        self.id = rid

    def __repr__(self):
        return f"<Ring {self.id}>"

    # ring structure -------------------------------------------------------
    def coerce(self, x):
        raise NotImplementedError

    def add(self, x, y):
        return self.coerce(x) + self.coerce(y)

    def sub(self, x, y):
        return self.coerce(x) - self.coerce(y)

    def neg(self, x):
        return -self.coerce(x)

    def mul(self, x, y):
        return self.coerce(x) * self.coerce(y)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def eq(self, x, y) -> bool:
        return self.coerce(x) == self.coerce(y)

    def is_zero(self, x) -> bool:
        return not self.coerce(x)

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    # syntax ---------------------------------------------------------------
    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str, line: int = 1, column: int = 1):
        raise NotImplementedError

    # windows and the additive model ------------------------------------------
    def support_width(self, x) -> int:
        """Largest support index of ``x`` (0 when there is none)."""
        return 0

    def additive_dim(self, window: int = 0) -> int:
        return 1

    def additive_orders(self, window: int = 0) -> tuple[int, ...]:
        return (0,)

    def to_additive(self, x, window: int = 0) -> list:
        raise NotImplementedError

    def from_additive(self, v, window: int = 0):
        raise NotImplementedError

    def mult_matrix(self, x, window: int = 0) -> list[list]:
        """Matrix (columns = images of basis vectors) of ``y -> x*y``."""
        raise NotImplementedError

    def residue(self, x):
        """Scalar by which ``x`` acts on a basis vector beyond its support."""
        raise NotImplementedError


class IntegerRing(Ring):
    def coerce(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingMismatchError(f"{x!r} is not an integer")
        return x

    def is_unit(self, x):
        return self.coerce(x) in (1, -1)

    def inverse(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        return x

    def format(self, x):
        return str(self.coerce(x))

    def parse(self, text, line=1, column=1):
        m = _INT.fullmatch(text)
        if not m:
            raise ParseError(f"bad integer {text.strip()!r}", line, column)
        return int(m.group(1))

    def to_additive(self, x, window=0):
        return [self.coerce(x)]

    def from_additive(self, v, window=0):
        return int(v[0])

    def mult_matrix(self, x, window=0):
        return [[self.coerce(x)]]


class ModularRing(Ring):
    def __init__(self, rid):
        super().__init__(rid)
        self.n = rid.modulus

    def coerce(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingMismatchError(f"{x!r} is not a residue mod {self.n}")
        return x % self.n

    def add(self, x, y):
        return (x + y) % self.n

    def sub(self, x, y):
        return (x - y) % self.n

    def neg(self, x):
        return (-x) % self.n

    def mul(self, x, y):
        return (x * y) % self.n

    def is_unit(self, x):
        return math.gcd(self.coerce(x), self.n) == 1

    def inverse(self, x):
        return pow(self.coerce(x), -1, self.n)

    def format(self, x):
        return f"{self.coerce(x)} mod {self.n}"

    def parse(self, text, line=1, column=1):
        m = re.fullmatch(r"\s*([+-]?\d+)(?:\s+mod\s+(\d+))?\s*", text)
        if not m:
            raise ParseError(f"bad residue {text.strip()!r}", line, column)
        if m.group(2) is not None and int(m.group(2)) != self.n:
            raise RingMismatchError(f"residue mod {m.group(2)} in a Z/{self.n} context")
        return int(m.group(1)) % self.n

    def additive_orders(self, window=0):
        return (self.n,)

    def to_additive(self, x, window=0):
        return [self.coerce(x)]

    def from_additive(self, v, window=0):
        return int(v[0]) % self.n

    def mult_matrix(self, x, window=0):
        return [[self.coerce(x)]]


class UnitificationRing(Ring):
    def coerce(self, x):
        if isinstance(x, UElement):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return UElement(x, 0)
        raise RingMismatchError(f"{x!r} is not an element of U")

    def mul(self, x, y):
        return u_mul(self.coerce(x), self.coerce(y))

    def is_unit(self, x):
        # (m,a)(n,b) = (1,0) forces n = m = +-1 and then b + a + a*b = (b \ a) + a = 0,
        # which needs a = 0: the units are exactly (+-1, 0).
        x = self.coerce(x)
        return x.m in (1, -1) and x.a == 0

    def inverse(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{format_u(self.coerce(x))} is not a unit in U")
        return self.coerce(x)

    def format(self, x):
        return format_u(self.coerce(x))

    def parse(self, text, line=1, column=1):
        return parse_u(text, line, column)

    def support_width(self, x):
        return self.coerce(x).a.bit_length() - 1 if self.coerce(x).a else 0

    def additive_dim(self, window=0):
        return 1 + window

    def additive_orders(self, window=0):
        return (0,) + (2,) * window

    def to_additive(self, x, window=0):
        x = self.coerce(x)
        if x.a >> (window + 1):
            raise ValueError(f"{format_u(x)} exceeds window {window}")
        return [x.m] + [(x.a >> i) & 1 for i in range(1, window + 1)]

    def from_additive(self, v, window=0):
        mask = 0
        for i in range(1, window + 1):
            if v[i] % 2:
                mask |= 1 << i
        return UElement(int(v[0]), mask)

    def mult_matrix(self, x, window=0):
        x = self.coerce(x)
        s = 1 + window
        mat = [[0] * s for _ in range(s)]
        # image of 1 is x itself
        col = self.to_additive(x, window)
        for r in range(s):
            mat[r][0] = col[r]
        # image of t_k = (0, e_k) is (0, (m + a_k) e_k)
        for k in range(1, s):
            mat[k][k] = (x.m + ((x.a >> k) & 1)) % 2
        return mat

    def residue(self, x):
        return self.coerce(x).m % 2


class SquareZeroRing(Ring):
    def __init__(self, rid):
        super().__init__(rid)
        self.field = rid.field
        self.base = "Q" if self.field == "Q" else "Z"

    def coerce(self, x):
        if isinstance(x, SqZeroElement):
            if x.field != self.field:
                raise RingMismatchError(f"SQ[{x.field}] element in SQ[{self.field}]")
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return SqZeroElement.of(x, field=self.field)
        raise RingMismatchError(f"{x!r} is not an element of SQ[{self.field}]")

    def mul(self, x, y):
        return sq_mul(self.coerce(x), self.coerce(y))

    def is_unit(self, x):
        return bool(self.coerce(x).c0)

    def inverse(self, x):
        # (c0 + v)^-1 = c0^-1 - c0^-2 v
        x = self.coerce(x)
        if not x.c0:
            raise ZeroDivisionError(f"{format_sq(x)} is not a unit")
        inv = _field_scalar(self.field, Fraction(1) / Fraction(x.c0))
        return SqZeroElement.of(inv, {i: -inv * inv * c for i, c in x.coeffs}, self.field)

    def format(self, x):
        return format_sq(self.coerce(x))

    def parse(self, text, line=1, column=1):
        return parse_sq(text, self.field, line, column)

    def support_width(self, x):
        x = self.coerce(x)
        return x.coeffs[-1][0] if x.coeffs else 0

    def additive_dim(self, window=0):
        return 1 + window

    def additive_orders(self, window=0):
        return ((2,) if self.field == "F2" else (0,)) * (1 + window)

    def to_additive(self, x, window=0):
        x = self.coerce(x)
        if x.coeffs and x.coeffs[-1][0] > window:
            raise ValueError(f"{format_sq(x)} exceeds window {window}")
        out = [x.c0] + [x.coefficient(i) for i in range(1, window + 1)]
        return out

    def from_additive(self, v, window=0):
        return SqZeroElement.of(v[0], {i: v[i] for i in range(1, window + 1)}, self.field)

    def mult_matrix(self, x, window=0):
        x = self.coerce(x)
        s = 1 + window
        zero = _field_scalar(self.field, 0)
        mat = [[zero] * s for _ in range(s)]
        col = self.to_additive(x, window)
        for r in range(s):
            mat[r][0] = col[r]
        for k in range(1, s):
            mat[k][k] = x.c0
        return mat

    def residue(self, x):
        return self.coerce(x).c0


@lru_cache(maxsize=None)
def ring_ops(rid: RingId) -> Ring:
    """The arithmetic bundle for ``rid``."""
    if rid.kind is RingKind.INTEGERS:
        return IntegerRing(rid)
    if rid.kind is RingKind.MODULAR:
        return ModularRing(rid)
    if rid.kind is RingKind.UNITIFICATION:
        return UnitificationRing(rid)
    return SquareZeroRing(rid)


ZZ = RingId.integers()
UU = RingId.unitification()
