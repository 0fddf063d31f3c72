"""Linear systems over GF(2) with int bitsets (bit j = variable j)."""

from __future__ import annotations


def gf2_solve(equations, rhs, nvars: int):
    """Solve ``sum_j eq[j] x_j = rhs`` for every equation.

    ``equations`` are bitmasks over ``nvars`` variables, ``rhs`` a list of bits.
    Returns ``(solution_mask | None, kernel_masks)``; ``None`` means the
    system is inconsistent.  The kernel masks form a basis of the null space.
    """
    flag = 1 << nvars
    rows = [e | (flag if b & 1 else 0) for e, b in zip(equations, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(nvars):
        bit = 1 << col
        pivot = None
        for i in range(r, len(rows)):
            if rows[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= prow
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i] & flag:
            return None, _kernel(rows[:r], pivots, nvars)
    solution = 0
    for i, col in enumerate(pivots):
        if rows[i] & flag:
            solution |= 1 << col
    return solution, _kernel(rows[:r], pivots, nvars)


def _kernel(rows, pivots, nvars):
    pivot_set = set(pivots)
    basis = []
    for free in range(nvars):
        if free in pivot_set:
            continue
        v = 1 << free
        fbit = 1 << free
        for i, col in enumerate(pivots):
            if rows[i] & fbit:
                v |= 1 << col
        basis.append(v)
    return basis


def gf2_rank(vectors) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def gf2_in_span(v: int, vectors) -> bool:
    return gf2_rank(list(vectors) + [v]) == gf2_rank(vectors)
