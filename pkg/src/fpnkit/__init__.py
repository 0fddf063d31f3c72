"""Finitely n-presented modules: exact computations over Z, Z/n, U and SQ[k]."""

from .errors import (
    DimensionError,
    DuplicateIndexError,
    FpnkitError,
    InvalidRingError,
    NotFinitelyGeneratedError,
    ParseError,
    RingMismatchError,
    ScheduleError,
    UnsupportedRingError,
    WindowRequiredError,
)
from .rings import RingId, RingKind, SqZeroElement, UElement, ring_ops, u_mul, sq_mul

__version__ = "0.1.0"

__all__ = [
    "DimensionError", "DuplicateIndexError", "FpnkitError", "InvalidRingError",
    "NotFinitelyGeneratedError", "ParseError", "RingMismatchError", "ScheduleError",
    "UnsupportedRingError", "WindowRequiredError",
    "RingId", "RingKind", "SqZeroElement", "UElement", "ring_ops", "sq_mul", "u_mul",
]
