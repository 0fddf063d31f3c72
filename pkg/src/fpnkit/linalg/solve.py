"""``A x = b`` and kernels over every supported ring.

* ``Z``: Smith normal form.
* ``Z/n``: lift to ``[A | nI]`` over ``Z``; kernels are canonicalised by Howell form.
* ``U``: parity split.  The integer parts give a Diophantine system; its
  solution lattice ``n0 + N t`` is substituted into the GF(2) system of every
  support coordinate, with the parities of ``t`` as extra GF(2) unknowns.
* ``SQ[k]``: one linear system over ``k`` in the scalar parts and the
  coefficients of every window variable.

For ``U`` and ``SQ[k]`` unknowns are restricted to supports in ``[1..window]``.
If all data lives in ``[1..W]``, every coordinate beyond ``W`` carries an
identical copy of one small system over the residue field (``F2`` or ``k``),
so the full kernel is ``K_W (+) V e_{W+1} (+) V e_{W+2} (+) ...`` where ``V`` is
the residue-field kernel.  ``kernel_analysis`` uses this to decide exactly
whether the kernel is finitely generated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from ..errors import DimensionError, RingMismatchError, WindowRequiredError
from ..rings import RingId, RingKind, SqZeroElement, UElement, ring_ops
from .gf2 import gf2_in_span, gf2_rank, gf2_solve
from .howell import howell_rows
from .matrix import RingMatrix
from .rational import q_rank, q_solve
from .smith import int_solve


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``A x = b``.

    ``kernel_generators`` generate the full kernel for ``Z``, ``Z/n``; for
    windowed rings they generate (additively) the kernel restricted to the
    window.  ``obstruction`` names the violated condition when there is no
    particular solution.
    """

    particular: tuple | None
    kernel_generators: tuple
    window: int | None = None
    obstruction: str | None = None

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def _check(A: RingMatrix, b):
    if len(b) != A.rows:
        raise DimensionError(f"right-hand side has {len(b)} entries, matrix has {A.rows} rows")
    R = ring_ops(A.ring)
    try:
        return tuple(R.coerce(x) for x in b)
    except RingMismatchError:
        raise
    except TypeError as exc:  # pragma: no cover
        raise RingMismatchError(str(exc)) from None


def _require_window(ring: RingId, window):
    if ring.windowed and window is None:
        raise WindowRequiredError(f"a support window is required over {ring}")


def solve_linear(A: RingMatrix, b, window: int | None = None) -> SolutionSet:
    """Particular solution and kernel generators of ``A x = b``."""
    b = _check(A, b)
    _require_window(A.ring, window)
    kind = A.ring.kind
    if kind is RingKind.INTEGERS:
        x, ker = int_solve(A.to_rows(), list(b), A.cols)
        return SolutionSet(None if x is None else tuple(x), tuple(map(tuple, ker)),
                           obstruction=None if x is not None else "integer")
    if kind is RingKind.MODULAR:
        return _solve_modular(A, b)
    if kind is RingKind.UNITIFICATION:
        return _solve_unitification(A, b, window)
    return _solve_square_zero(A, b, window)


def kernel_basis(A: RingMatrix, window: int | None = None) -> list[tuple]:
    """Generators of ``ker A`` (window-restricted for windowed rings)."""
    return list(solve_linear(A, (ring_ops(A.ring).zero,) * A.rows, window).kernel_generators)


# ---------------------------------------------------------------------------
# Z/n


def _solve_modular(A: RingMatrix, b) -> SolutionSet:
    n = A.ring.modulus
    r, c = A.rows, A.cols
    lifted = [list(A.row(i)) + [n if k == i else 0 for k in range(r)] for i in range(r)]
    x, ker = int_solve(lifted, list(b), c + r)
    kernel = howell_rows([v[:c] for v in ker], n, c)
    if x is None:
        return SolutionSet(None, tuple(map(tuple, kernel)), obstruction="modular")
    return SolutionSet(tuple(v % n for v in x[:c]), tuple(map(tuple, kernel)))


# ---------------------------------------------------------------------------
# U: parity split


def _solve_unitification(A: RingMatrix, b, window: int) -> SolutionSet:
    r, c = A.rows, A.cols
    B = window
    K = max(B, A.support_width(), max((x.a.bit_length() - 1 for x in b if x.a), default=0))
    M = [[A[i, j].m for j in range(c)] for i in range(r)]
    n0, lattice = int_solve(M, [x.m for x in b], c)
    if n0 is None:
        return SolutionSet(None, (), window, obstruction="integer")
    t = len(lattice)
    nvars = t + c * B
    equations, rhs = [], []
    for i in range(r):
        for k in range(1, K + 1):
            eq = 0
            target = (b[i].a >> k) & 1
            for j in range(c):
                a_bit = (A[i, j].a >> k) & 1
                if a_bit:
                    target ^= n0[j] & 1
                    for s in range(t):
                        if lattice[s][j] & 1:
                            eq ^= 1 << s
                if k <= B and (A[i, j].m + a_bit) & 1:
                    eq ^= 1 << (t + j * B + k - 1)
            equations.append(eq)
            rhs.append(target)
    sol, ker = gf2_solve(equations, rhs, nvars)

    def build(bits: int, base):
        n = list(base)
        for s in range(t):
            if (bits >> s) & 1:
                n = [x + y for x, y in zip(n, lattice[s])]
        out = []
        for j in range(c):
            mask = 0
            for k in range(1, B + 1):
                if (bits >> (t + j * B + k - 1)) & 1:
                    mask |= 1 << k
            out.append(UElement(n[j], mask))
        return tuple(out)

    zero = [0] * c
    kernel = [build(v, zero) for v in ker]
    kernel += [tuple(UElement(2 * x, 0) for x in vec) for vec in lattice]
    if sol is None:
        return SolutionSet(None, tuple(kernel), window, obstruction="parity")
    return SolutionSet(build(sol, n0), tuple(kernel), window)


def _unitification_kernel_count(A: RingMatrix, window: int) -> int:
    """Minimal additive generator count of the window kernel: ``rank + dim torsion``."""
    r, c = A.rows, A.cols
    B = window
    K = max(B, A.support_width())
    M = [[A[i, j].m for j in range(c)] for i in range(r)]
    _, lattice = int_solve(M, [0] * r, c)
    t = len(lattice)
    equations = []
    for i in range(r):
        for k in range(1, K + 1):
            eq = 0
            for j in range(c):
                a_bit = (A[i, j].a >> k) & 1
                if a_bit:
                    for s in range(t):
                        if lattice[s][j] & 1:
                            eq ^= 1 << s
                if k <= B and (A[i, j].m + a_bit) & 1:
                    eq ^= 1 << (t + j * B + k - 1)
            equations.append(eq)
    _, ker = gf2_solve(equations, [0] * len(equations), t + c * B)
    tau_mask = (1 << t) - 1
    torsion_dim = len(ker) - gf2_rank([v & tau_mask for v in ker])
    return t + torsion_dim


# ---------------------------------------------------------------------------
# SQ[k]


def _solve_square_zero(A: RingMatrix, b, window: int) -> SolutionSet:
    fld = A.ring.field
    r, c = A.rows, A.cols
    B = window
    K = max(B, A.support_width(), max((x.coeffs[-1][0] for x in b if x.coeffs), default=0))
    nvars = c + c * B

    def var(j, k):
        return j if k == 0 else c + j * B + k - 1

    rows, rhs = [], []
    for i in range(r):
        row = [0] * nvars
        for j in range(c):
            row[var(j, 0)] = A[i, j].c0
        rows.append(row)
        rhs.append(b[i].c0)
        for k in range(1, K + 1):
            row = [0] * nvars
            for j in range(c):
                if k <= B:
                    row[var(j, k)] = A[i, j].c0
                row[var(j, 0)] = A[i, j].coefficient(k)
            rows.append(row)
            rhs.append(b[i].coefficient(k))

    def build(vec):
        return tuple(
            SqZeroElement.of(vec[var(j, 0)], {k: vec[var(j, k)] for k in range(1, B + 1)}, fld)
            for j in range(c)
        )

    if fld == "F2":
        masks = [sum(1 << v for v, x in enumerate(row) if x % 2) for row in rows]
        sol, ker = gf2_solve(masks, [x % 2 for x in rhs], nvars)
        unpack = lambda m: [(m >> v) & 1 for v in range(nvars)]  # noqa: E731
        kernel = tuple(build(unpack(v)) for v in ker)
        if sol is None:
            return SolutionSet(None, kernel, window, obstruction="field")
        return SolutionSet(build(unpack(sol)), kernel, window)
    sol, ker = q_solve(rows, rhs, nvars)
    kernel = tuple(build(v) for v in ker)
    if sol is None:
        return SolutionSet(None, kernel, window, obstruction="field")
    return SolutionSet(build(sol), kernel, window)


# ---------------------------------------------------------------------------
# finite generation of kernels over windowed rings


def kernel_generator_count(A: RingMatrix, window: int | None = None) -> int:
    """Minimal number of additive generators of the (window-restricted) kernel.

    Additive means over the base: ``Z`` for ``Z``, ``Z/n`` and ``U`` (so a
    kernel ``Z^r (+) (Z/2)^s`` counts ``r + s``), the field for ``SQ[k]``.
    """
    kind = A.ring.kind
    if kind is RingKind.UNITIFICATION:
        _require_window(A.ring, window)
        return _unitification_kernel_count(A, window)
    if kind is RingKind.SQUARE_ZERO:
        return len(kernel_basis(A, window))
    if kind is RingKind.INTEGERS:
        return len(kernel_basis(A))
    from .smith import smith
    # Z/n: the kernel is a finite abelian group; count its nontrivial invariant factors
    n = A.ring.modulus
    gens = kernel_basis(A)
    if not gens:
        return 0
    rows = [[g[j] for g in gens] + [n if k == j else 0 for k in range(A.cols)]
            for j in range(A.cols)]
    res = smith(rows, A.cols, len(gens) + A.cols)
    return sum(1 for d in res.diagonal if d != 1)


@dataclass(frozen=True)
class KernelAnalysis:
    """Exact description of ``ker A`` over a windowed ring.

    ``generators`` lie in ``[1..support_width]`` and generate the kernel over
    the ring when ``finitely_generated``; otherwise ``tail_obstruction`` is a
    residue-field vector of the beyond-support kernel that no finite
    generating set can reach at coordinates past its own supports.
    """

    finitely_generated: bool
    generators: tuple
    support_width: int
    tail_kernel: tuple = ()
    tail_obstruction: tuple | None = None
    counts: dict = field(default_factory=dict)


def _residue_kernel(A: RingMatrix):
    """Basis of the kernel over the residue field of the residue matrix of ``A``."""
    R = ring_ops(A.ring)
    res = [[R.residue(A[i, j]) for j in range(A.cols)] for i in range(A.rows)]
    if A.ring.kind is RingKind.UNITIFICATION or A.ring.field == "F2":
        masks = [sum(1 << j for j, x in enumerate(row) if x % 2) for row in res]
        _, ker = gf2_solve(masks, [0] * len(masks), A.cols)
        return [tuple((v >> j) & 1 for j in range(A.cols)) for v in ker]
    _, ker = q_solve(res, [0] * A.rows, A.cols)
    return [tuple(v) for v in ker]


def _in_residue_span(ring: RingId, v, vectors) -> bool:
    if ring.kind is RingKind.UNITIFICATION or ring.field == "F2":
        pack = lambda w: sum(1 << j for j, x in enumerate(w) if x % 2)  # noqa: E731
        return gf2_in_span(pack(v), [pack(w) for w in vectors])
    vs = [list(w) for w in vectors]
    n = len(v)
    return q_rank(vs + [list(v)], n) == q_rank(vs, n) if vs else not any(v)


def kernel_analysis(A: RingMatrix, windows=()) -> KernelAnalysis:
    """Decide whether ``ker A`` is finitely generated; prune an R-generating set.

    ``windows`` only adds per-window additive generator counts to the report.
    """
    if not A.ring.windowed:
        gens = tuple(kernel_basis(A))
        return KernelAnalysis(True, gens, 0, counts={w: kernel_generator_count(A) for w in windows})
    R = ring_ops(A.ring)
    W = A.support_width()
    additive = [g for g in kernel_basis(A, W) if any(g)]
    tail = _residue_kernel(A)
    reductions = [tuple(R.residue(x) for x in g) for g in additive]
    obstruction = None
    for v in tail:
        if not _in_residue_span(A.ring, v, reductions):
            obstruction = v
            break
    counts = {w: kernel_generator_count(A, w) for w in windows}
    if obstruction is not None:
        return KernelAnalysis(False, tuple(additive), W, tuple(tail), obstruction, counts)
    return KernelAnalysis(True, tuple(prune_generators(A.ring, A.cols, additive, W)),
                          W, tuple(tail), None, counts)


def prune_generators(ring: RingId, length: int, gens, window: int | None = None) -> list[tuple]:
    """Drop generators lying in the R-span of the others (greedy, in order)."""
    R = ring_ops(ring)
    gens = [tuple(g) for g in gens if any(g)]
    if ring.kind is RingKind.INTEGERS:
        return gens
    if ring.windowed and window is None:
        window = max((R.support_width(x) for g in gens for x in g), default=0)
    kept = list(gens)
    i = len(kept) - 1
    while i >= 0:
        others = kept[:i] + kept[i + 1:]
        if not others:
            break
        M = RingMatrix.from_columns(ring, others, length)
        if solve_linear(M, kept[i], window).solvable:
            kept = others
        i -= 1
    return kept
