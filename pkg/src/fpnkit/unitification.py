"""Ideals of the unitification ring ``U = Z (+) (+)Z/2``.

Membership, principal reduction of finitely generated ideals, splittings of
``(m,a)R`` for odd ``m``, kernel growth for even ``m`` and the non-split
extension ``(m^2,a)R -> (m,a)R -> C``.
"""

from __future__ import annotations

import functools
import math
import operator
import random
from dataclasses import dataclass, field

from .errors import HypothesisError, ZeroIdealError
from .linalg.matrix import RingMatrix
from .linalg.smith import int_solve
from .linalg.solve import kernel_analysis, kernel_generator_count, solve_linear
from .modules.presentation import Presentation
from .modules.resolution import FPnVerified, Inconclusive, SyzygyGrowth, check_schedule
from .rings import UU, UElement, format_u, indices_of, mask_of, u_mul, window_mask


def _u(x) -> UElement:
    if isinstance(x, UElement):
        return x
    if isinstance(x, int):
        return UElement(x, 0)
    m, supp = x
    return UElement.of(m, supp)


def _width(*xs: UElement) -> int:
    return max((x.a.bit_length() - 1 for x in xs if x.a), default=0)


def _combine(gens, coeffs) -> UElement:
    acc = UElement(0, 0)
    for g, k in zip(gens, coeffs):
        acc = acc + u_mul(g, k)
    return acc


@dataclass(frozen=True)
class IdealFG:
    """``<g1, ..., gk>`` in ``U``."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(_u(g) for g in self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *gens) -> IdealFG:
        return cls(tuple(gens))

    def normalized(self) -> IdealFG | None:
        """Drop zero and repeated generators (order kept); None for the zero ideal."""
        seen, out = set(), []
        for g in self.generators:
            if g and g not in seen:
                seen.add(g)
                out.append(g)
        return IdealFG(tuple(out)) if out else None

    def support_width(self) -> int:
        return _width(*self.generators)

    def __str__(self):
        return "<" + ", ".join(format_u(g) for g in self.generators) + ">"


@dataclass(frozen=True)
class Membership:
    """``coefficients`` satisfy ``x == sum g_i * k_i`` when ``member``.

    A negative answer names the violated projection: ``"integer"`` (the
    integer parts fail a divisibility condition) or ``"parity"`` (the F2
    system on the support coordinates is inconsistent).
    """

    member: bool
    coefficients: tuple | None
    obstruction: str | None
    window: int

    def __bool__(self):
        return self.member


def ideal_membership(I: IdealFG, x, bound: int | None = None) -> Membership:
    """Exact membership test; the window is enlarged to cover every support."""
    x = _u(x)
    gens = I.generators
    window = max(bound or 0, _width(x, *gens))
    A = RingMatrix.from_rows(UU, [list(gens)], len(gens))
    sol = solve_linear(A, [x], window)
    if not sol.solvable:
        return Membership(False, None, sol.obstruction, window)
    if _combine(gens, sol.particular) != x:  # pragma: no cover - solver soundness guard
        raise AssertionError("membership witness failed to re-substitute")
    return Membership(True, sol.particular, None, window)


# ---------------------------------------------------------------------------
# principal reduction


@dataclass(frozen=True)
class BezoutReduction:
    """``<generator> == I`` with witnesses for both containments.

    ``forward[i]`` is ``r_i`` with ``g_i = generator * r_i``; ``backward`` are
    coefficients ``k_j`` with ``generator = sum g_j k_j``.  ``candidates`` lists
    the supports ``a`` with ``(d, a)`` in ``I`` visited on the odd branch.
    """

    ideal: IdealFG
    generator: UElement
    branch: str
    forward: tuple
    backward: tuple
    candidates: tuple = ()
    membership_queries: int = 0

    def verify(self) -> bool:
        gens = self.ideal.generators
        ok = all(u_mul(self.generator, r) == g for g, r in zip(gens, self.forward))
        return ok and _combine(gens, self.backward) == self.generator


def _gcd_combination(ns):
    """``(d, k)`` with ``sum k_i n_i == d == gcd(ns) >= 0``."""
    g = math.gcd(*ns)
    ks, _ = int_solve([list(ns)], [g], len(ns))
    return g, ks


def _closure(seeds: list[int]) -> list[int]:
    """Close a family of supports under intersection."""
    found = list(dict.fromkeys(seeds))
    known = set(found)
    i = 0
    while i < len(found):
        for j in range(i):
            c = found[i] & found[j]
            if c not in known:
                known.add(c)
                found.append(c)
        i += 1
    return found


def bezout_reduce(I: IdealFG) -> BezoutReduction:
    """A principal generator ``(d, c)`` of ``I`` with ``d = gcd`` of integer parts."""
    norm = I.normalized()
    if norm is None:
        raise ZeroIdealError("the zero ideal has no principal reduction")
    gens = norm.generators
    ns = [g.m for g in gens]
    d = math.gcd(*ns)
    queries = 0
    candidates: tuple = ()
    ms = [n // d if d else 0 for n in ns]
    if d % 2 == 0:
        S = 0
        for g in gens:
            S |= g.a
        gen = UElement(d, S)
        forward = tuple(UElement(m, g.a) if m % 2 == 0 else UElement(m, S ^ g.a)
                        for m, g in zip(ms, gens))
        branch = "even"
    else:
        _, ks = _gcd_combination(ns)
        a0 = _combine(gens, [UElement(k, 0) for k in ks]).a
        seeds = [a0] + [g.a if m % 2 else g.a ^ a0 for m, g in zip(ms, gens)]
        closed = _closure(seeds)
        c = functools.reduce(operator.and_, closed)
        # J is an affine space over the supports T with (0, T) in I; shrink to its minimum
        for i in indices_of(c):
            trial = c & ~(1 << i)
            queries += 1
            if ideal_membership(norm, UElement(d, trial)):
                c = trial
        candidates = tuple(sorted(set(closed) | {c}))
        gen = UElement(d, c)
        forward = tuple(UElement(m, g.a) for m, g in zip(ms, gens))
        branch = "odd"
    # re-check forward witnesses; fall back to a solve if a formula does not apply
    fixed = []
    for g, r in zip(gens, forward):
        if u_mul(gen, r) != g:
            queries += 1
            mem = ideal_membership(IdealFG((gen,)), g)
            if not mem:
                raise AssertionError(f"{format_u(g)} is not a multiple of {format_u(gen)}")
            r = mem.coefficients[0]
        fixed.append(r)
    queries += 1
    back = ideal_membership(norm, gen)
    if not back:
        raise AssertionError(f"{format_u(gen)} is not in {norm}")
    return BezoutReduction(norm, gen, branch, tuple(fixed), back.coefficients, candidates, queries)


# ---------------------------------------------------------------------------
# odd m: (m,a)R is projective


@dataclass(frozen=True)
class SplitWitness:
    """Splitting of ``R -> (m,a)R`` given by ``(m,a) -> (1,a)``.

    ``section`` is the image ``(1,a)`` of the generator, ``idempotent`` is
    ``e = (1,a)``, with ``eR`` isomorphic to ``(m,a)R``.
    """

    m: int
    a: int
    section: UElement
    idempotent: UElement
    annihilator_generators: tuple
    samples_checked: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures and u_mul(self.idempotent, self.idempotent) == self.idempotent


def _random_element(rng: random.Random, width: int, bound: int = 20) -> UElement:
    return UElement(rng.randint(-bound, bound), rng.getrandbits(width + 1) & window_mask(width))


def principal_split(m: int, a=(), samples: int = 32, seed: int = 0) -> SplitWitness:
    if m % 2 == 0:
        raise HypothesisError(f"m = {m} is even; use kernel_growth_witness")
    amask = a if isinstance(a, int) else mask_of(a)
    x = UElement(m, amask)
    section = UElement(1, amask)
    failures = []
    # well defined: ann(m,a) is f.g. and every generator also kills (1,a)
    ana = kernel_analysis(RingMatrix.from_rows(UU, [[x]], 1))
    if not ana.finitely_generated:  # pragma: no cover
        failures.append(("annihilator", "not finitely generated"))
    ann = tuple(g[0] for g in ana.generators)
    for z in ann:
        if u_mul(section, z):
            failures.append(("annihilator", format_u(z)))
    if u_mul(x, section) != x:
        failures.append(("fixes-generator", format_u(u_mul(x, section))))
    rng = random.Random(seed)
    width = _width(x) + 2
    for _ in range(samples):
        r = _random_element(rng, width)
        elt = u_mul(x, r)
        back = u_mul(x, u_mul(section, r))  # f(g(x r)) = (m,a) (1,a) r
        if back != elt:
            failures.append(("composite", format_u(r)))
    return SplitWitness(m, amask, section, section, ann, samples, tuple(failures))


# ---------------------------------------------------------------------------
# even m: the kernel of R -> (m,a)R is not finitely generated


@dataclass(frozen=True)
class KernelGrowth:
    m: int
    a: int
    windows: tuple
    counts: tuple
    expected: tuple
    verdict: object
    tail_obstruction: tuple | None

    @property
    def matches_formula(self) -> bool:
        return self.counts == self.expected


def kernel_growth_witness(m2: int, a=(), windows=(2, 4, 8, 16)) -> KernelGrowth:
    """Window counts of ``ker(R -> (m2,a)R)`` against ``|[1..B] \\ supp a|``."""
    if m2 % 2:
        raise HypothesisError(f"m = {m2} is odd; use principal_split")
    windows = check_schedule(windows)
    amask = a if isinstance(a, int) else mask_of(a)
    A = RingMatrix.from_rows(UU, [[UElement(m2, amask)]], 1)
    ana = kernel_analysis(A, windows)
    counts = tuple(kernel_generator_count(A, w) for w in windows)
    expected = tuple(bin(window_mask(w) & ~amask).count("1") for w in windows)
    if ana.finitely_generated:
        verdict = FPnVerified(1)
    elif len(counts) >= 3 and all(x < y for x, y in zip(counts, counts[1:])):
        verdict = SyzygyGrowth(1, counts)
    else:
        verdict = Inconclusive(1, "fewer than three strictly increasing window counts")
    return KernelGrowth(m2, amask, windows, counts, expected, verdict, ana.tail_obstruction)


# ---------------------------------------------------------------------------
# the non-split extension


@dataclass(frozen=True)
class NonsplitReport:
    """Whether ``(m^2,a)R -> (m,a)R`` has no retraction.

    A retraction ``q`` is fixed by ``q((m,a)) = (m^2,a) x``; it restricts to
    the identity iff ``(m^3,a) x = (m^2,a)``.  ``obstruction`` names the
    failing condition of that equation.
    """

    m: int
    a: int
    nonsplit: bool
    obstruction: str | None
    integer_equation: tuple

    def __bool__(self):
        return self.nonsplit


def nonsplit_extension_check(m: int, a=()) -> NonsplitReport:
    if m % 2 == 0 or abs(m) == 1:
        raise HypothesisError(f"needs an odd m with |m| > 1, got {m}")
    amask = a if isinstance(a, int) else mask_of(a)
    sq = UElement(m * m, amask)
    # (m,a)(m^2,a) = (m^3, a) for odd m
    cube = u_mul(UElement(m, amask), sq)
    A = RingMatrix.from_rows(UU, [[cube]], 1)
    sol = solve_linear(A, [sq], _width(sq))
    if sol.solvable:
        return NonsplitReport(m, amask, False, None, (cube.m, sq.m))
    if sol.obstruction == "integer":
        text = f"{sq.m} = {cube.m}*n has no integer solution"
    else:
        text = "the F2 system on the support coordinates is inconsistent"
    return NonsplitReport(m, amask, True, text, (cube.m, sq.m))


# ---------------------------------------------------------------------------
# presentations of principal ideals and the corpus


def principal_ideal_presentation(x, label: str = "") -> Presentation:
    """``xR`` as ``R / ann(x)``; requires a finitely generated annihilator."""
    x = _u(x)
    ana = kernel_analysis(RingMatrix.from_rows(UU, [[x]], 1))
    if not ana.finitely_generated:
        from .errors import NotFinitelyGeneratedError
        raise NotFinitelyGeneratedError(f"ann{format_u(x)} is not finitely generated", ana)
    ann = [g[0] for g in ana.generators]
    return Presentation(UU, 1, RingMatrix.from_rows(UU, [ann], len(ann)),
                        label or f"{format_u(x)}R")


def quotient_module(m: int, a=()) -> Presentation:
    """``C(m,a) = (m,a)R / (m^2,a)R`` presented on the generator ``(m,a)``.

    ``(m,a)R = R/ann(m,a)`` and ``(m^2,a) = (m,a) r`` for the ``r`` found by
    a solve, so ``C = coker[ann(m,a) | r]``.
    """
    if m % 2 == 0:
        raise HypothesisError(f"C(m,a) needs odd m, got {m}")
    amask = a if isinstance(a, int) else mask_of(a)
    x = UElement(m, amask)
    base = principal_ideal_presentation(x)
    sol = solve_linear(RingMatrix.from_rows(UU, [[x]], 1), [UElement(m * m, amask)], _width(x))
    r = sol.particular[0]
    rel = list(base.relations.row(0)) + [r]
    label = f"C({m};{','.join(map(str, indices_of(amask)))})"
    return Presentation(UU, 1, RingMatrix.from_rows(UU, [rel], len(rel)), label)


CORPUS_M = (3, 5, 7)
CORPUS_SUPPORTS = ((), (1,), (1, 2))


@dataclass(frozen=True)
class CorpusEntry:
    module: Presentation
    m: int | None = None
    a: tuple = ()
    kind: str = "quotient"
    extras: dict = field(default_factory=dict)


def fp2_corpus() -> list[CorpusEntry]:
    """The nine ``C(m,a)`` and the free modules of rank 1, 2, 3."""
    out = [CorpusEntry(quotient_module(m, a), m, a) for m in CORPUS_M for a in CORPUS_SUPPORTS]
    out += [CorpusEntry(Presentation.free(UU, k), kind="free") for k in (1, 2, 3)]
    return out
