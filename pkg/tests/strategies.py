"""Shared hypothesis strategies for ring elements."""

from __future__ import annotations

from hypothesis import strategies as st

from fpnkit.rings import RingId, SqZeroElement, UElement

ZZ = RingId.integers()
UU = RingId.unitification()
SQ2 = RingId.square_zero("F2")
SQQ = RingId.square_zero("Q")

supports = st.lists(st.integers(1, 12), max_size=5, unique=True)
u_elements = st.builds(UElement.of, st.integers(-50, 50), supports)

f2_elements = st.builds(
    lambda c0, cs: SqZeroElement.of(c0, cs, "F2"),
    st.integers(0, 1),
    st.dictionaries(st.integers(1, 10), st.integers(0, 1), max_size=5),
)
small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)
q_elements = st.builds(
    lambda c0, cs: SqZeroElement.of(c0, cs, "Q"),
    small_fractions,
    st.dictionaries(st.integers(1, 8), small_fractions, max_size=4),
)

def elements(rid: RingId):
    if rid == ZZ:
        return st.integers(-100, 100)
    if rid == UU:
        return u_elements
    if rid == SQ2:
        return f2_elements
    if rid == SQQ:
        return q_elements
    return st.integers(0, rid.modulus - 1)

__all__ = ["ZZ", "UU", "SQ2", "SQQ", "elements", "u_elements", "f2_elements", "q_elements"]
