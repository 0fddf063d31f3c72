"""Syzygies, free resolutions and finite-presentation certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotFinitelyGeneratedError, ScheduleError
from ..linalg.howell import howell_rows
from ..linalg.matrix import RingMatrix
from ..linalg.solve import kernel_analysis, kernel_basis, prune_generators, solve_linear
from ..rings import RingId, RingKind
from .presentation import ImageModule, Presentation


def check_schedule(windows) -> tuple[int, ...]:
    windows = tuple(int(w) for w in windows)
    if any(w < 1 for w in windows):
        raise ScheduleError(f"window bounds must be positive: {windows}")
    if any(a >= b for a, b in zip(windows, windows[1:])):
        raise ScheduleError(f"windows must be strictly increasing: {windows}")
    return windows


@dataclass(frozen=True)
class KernelStage:
    """Generators of ``ker d`` as the next differential.

    ``window`` is None when the generators span the whole kernel.
    """

    matrix: RingMatrix
    window: int | None
    analysis: object = None


def kernel_stage(d: RingMatrix, window: int | None = None) -> KernelStage:
    """Next differential under ``d``; window-restricted if the kernel is not f.g."""
    ring = d.ring
    if ring.kind is RingKind.INTEGERS:
        gens = kernel_basis(d)
        return KernelStage(RingMatrix.from_columns(ring, gens, d.cols), None)
    if ring.kind is RingKind.MODULAR:
        gens = prune_generators(ring, d.cols, kernel_basis(d))
        return KernelStage(RingMatrix.from_columns(ring, gens, d.cols), None)
    analysis = kernel_analysis(d, () if window is None else (window,))
    if analysis.finitely_generated:
        return KernelStage(RingMatrix.from_columns(ring, analysis.generators, d.cols), None,
                           analysis)
    if window is None:
        raise NotFinitelyGeneratedError(
            f"kernel of a {d.rows}x{d.cols} matrix over {ring} is not finitely generated; "
            "pass a window for a window-restricted syzygy",
            analysis,
        )
    gens = prune_generators(ring, d.cols, kernel_basis(d, window), window)
    return KernelStage(RingMatrix.from_columns(ring, gens, d.cols), window, analysis)


def as_presentation(M, window: int | None = None) -> Presentation:
    """Turn an :class:`ImageModule` into a presentation ``coker(ker G)``."""
    if isinstance(M, Presentation):
        return M
    stage = kernel_stage(M.generators, window)
    return Presentation(M.ring, M.generators.cols, stage.matrix, M.label, stage.window)


def syzygy(P, window: int | None = None) -> Presentation:
    """First syzygy ``ker(F0 -> M)``, presented over the columns of the relations.

    For an :class:`ImageModule` ``im G`` the syzygy is ``ker G`` itself,
    presented by the generators of ``ker(ker G)``.
    """
    if isinstance(P, ImageModule):
        first = kernel_stage(P.generators, window)
        nxt = kernel_stage(first.matrix, window)
        w = first.window if first.window is not None else nxt.window
        return Presentation(P.ring, first.matrix.cols, nxt.matrix, f"Omega({P})", w)
    stage = kernel_stage(P.relations, window)
    return Presentation(P.ring, P.relations.cols, stage.matrix, f"Omega({P})", stage.window)


@dataclass(frozen=True)
class Resolution:
    """``... -> F_2 --d_2--> F_1 --d_1--> F_0 -> M -> 0``.

    ``windows[i]`` is the window of ``d_{i+1}`` (None when exact).
    """

    ring: RingId
    differentials: tuple
    windows: tuple

    @property
    def ranks(self) -> tuple[int, ...]:
        if not self.differentials:
            return ()
        return (self.differentials[0].rows,) + tuple(d.cols for d in self.differentials)

    @property
    def exact(self) -> bool:
        return all(w is None for w in self.windows)

    def composites_vanish(self) -> bool:
        return all((a @ b).is_zero() for a, b in zip(self.differentials, self.differentials[1:]))

    def verify(self, window: int | None = None) -> bool:
        """Check ``d_i d_{i+1} = 0`` and ``im d_{i+1} = ker d_i``.

        Over windowed rings the window-restricted kernel (at ``window``, or at
        the support width of the data) must lie in the span of ``d_{i+1}``.
        """
        if not self.composites_vanish():
            return False
        for d, nxt in zip(self.differentials, self.differentials[1:]):
            kind = self.ring.kind
            if kind is RingKind.MODULAR:
                n = self.ring.modulus
                ker = howell_rows(kernel_basis(d), n, d.cols)
                img = howell_rows([list(c) for c in nxt.columns()], n, d.cols)
                if ker != img:
                    return False
                continue
            w = None
            if self.ring.windowed:
                w = window if window is not None else max(d.support_width(), nxt.support_width(), 1)
            for v in kernel_basis(d, w):
                if not solve_linear(nxt, v, w).solvable:
                    return False
        return True


def resolve(P, depth: int, windows=()) -> Resolution:
    """Iterated syzygies to ``depth`` differentials.

    Over windowed rings a non-f.g. kernel is replaced by its restriction to the
    largest window of the schedule (recorded in ``Resolution.windows``).
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    windows = check_schedule(windows)
    wmax = windows[-1] if windows else None
    if isinstance(P, ImageModule):
        first = kernel_stage(P.generators, wmax)
        diffs, wins = [first.matrix], [first.window]
    else:
        diffs, wins = [P.relations], [P.window]
    while len(diffs) < depth:
        stage = kernel_stage(diffs[-1], wmax)
        diffs.append(stage.matrix)
        wins.append(stage.window)
    return Resolution(P.ring, tuple(diffs), tuple(wins))


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class FPnVerified:
    level: int

    def __str__(self):
        return f"FPnVerified({self.level})"


@dataclass(frozen=True)
class SyzygyGrowth:
    stage: int
    counts: tuple

    def __str__(self):
        return f"SyzygyGrowth(stage {self.stage}, counts {','.join(map(str, self.counts))})"


@dataclass(frozen=True)
class Inconclusive:
    stage: int | None = None
    reason: str = ""

    def __str__(self):
        return f"Inconclusive({self.reason})" if self.reason else "Inconclusive"


@dataclass(frozen=True)
class FpCertificate:
    """Outcome of :func:`classify_fp`.

    ``level_verified`` is witnessed by ``resolution`` (all stages exact and
    finite free).  ``stage_generator_counts`` maps ``(stage, window)`` to a
    generator count: R-generators of a finitely generated stage (window None
    over Z and Z/n), additive generators of the window-restricted kernel
    otherwise.
    """

    level_verified: int
    resolution: Resolution
    stage_generator_counts: dict
    verdict: object
    tail_obstruction: tuple | None = None
    notes: tuple = field(default_factory=tuple)


def classify_fp(P, n: int, windows=()) -> FpCertificate:
    """Largest ``k <= n`` with ``P`` in ``FP_k`` witnessed by finite free stages.

    Stage ``s`` is the ``s``-th syzygy.  When a stage over a windowed ring is
    provably not finitely generated the verdict is ``SyzygyGrowth`` if the
    schedule shows at least three strictly increasing counts, ``Inconclusive``
    otherwise.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    windows = check_schedule(windows)
    ring = P.ring
    counts: dict = {}
    if isinstance(P, ImageModule):
        level, stage, current = 0, 1, P.generators
        diffs: list = []
    else:
        if P.window is not None:
            return FpCertificate(0, Resolution(ring, (), ()), counts,
                                 Inconclusive(1, "relations are window-restricted"))
        level, stage, current = 1, 2, P.relations
        diffs = [P.relations]
        if n >= 1:
            counts[(1, None)] = P.relations.cols
    if n == 0:
        return FpCertificate(0, Resolution(ring, (), ()), counts, FPnVerified(0))
    while level < n:
        if ring.windowed:
            analysis = kernel_analysis(current, windows)
            if not analysis.finitely_generated:
                seq = tuple(analysis.counts[w] for w in windows)
                for w in windows:
                    counts[(stage, w)] = analysis.counts[w]
                growing = len(seq) >= 3 and all(a < b for a, b in zip(seq, seq[1:]))
                verdict = SyzygyGrowth(stage, seq) if growing else Inconclusive(
                    stage, "fewer than three strictly increasing window counts")
                return FpCertificate(level, Resolution(ring, tuple(diffs), (None,) * len(diffs)),
                                     counts, verdict, analysis.tail_obstruction)
            gens = analysis.generators
            for w in windows or (None,):
                counts[(stage, w)] = len(gens)
            nxt = RingMatrix.from_columns(ring, gens, current.cols)
        else:
            nxt = kernel_stage(current).matrix
            counts[(stage, None)] = nxt.cols
        diffs.append(nxt)
        current = nxt
        level += 1
        stage += 1
    return FpCertificate(level, Resolution(ring, tuple(diffs), (None,) * len(diffs)), counts,
                         FPnVerified(level))
