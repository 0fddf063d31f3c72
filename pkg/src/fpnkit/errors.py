"""Exception hierarchy shared by every fpnkit layer."""

from __future__ import annotations


class FpnkitError(Exception):
    """Base class for all library errors."""


class InvalidRingError(FpnkitError, ValueError):
    """A ring identifier is malformed (e.g. ``Z/1``)."""


class RingMismatchError(FpnkitError, TypeError):
    """Values from two different rings were combined."""


class DimensionError(FpnkitError, ValueError):
    """Matrix or vector shapes are incompatible."""


class WindowRequiredError(FpnkitError, ValueError):
    """A support window is mandatory for this ring and was not given."""


class UnsupportedRingError(FpnkitError, ValueError):
    """The operation is not available over this ring."""


class NotFinitelyGeneratedError(FpnkitError):
    """A kernel over a windowed ring turned out not to be finitely generated.

    ``evidence`` carries the per-window generator counts and the tail obstruction.
    """

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class ParseError(FpnkitError, ValueError):
    """Syntax error in one of the text formats, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class DuplicateIndexError(ParseError):
    """A support list repeats an index, e.g. ``(3; 1,1)``."""


class ScheduleError(FpnkitError, ValueError):
    """A window schedule is empty, non-positive or not strictly increasing."""


class HypothesisError(FpnkitError, ValueError):
    """An operation was called outside its mathematical hypothesis (e.g. even ``m``)."""


class ZeroIdealError(FpnkitError, ValueError):
    """The ideal is zero after normalisation and has no principal reduction."""
