"""Torsion pairs on finite module universes and relative FP_n-injectivity/flatness.

Every verdict here is relative to a declared finite universe (or test
family) and the reports say so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .errors import FpnkitError, UnsupportedRingError
from .linalg.howell import howell_rows
from .linalg.matrix import RingMatrix
from .linalg.smith import smith
from .modules.functors import AbGroupValue, ModuleMap, ext_group, hom_module, module_invariants, tor_group
from .modules.presentation import Presentation
from .modules.projective import character_dual
from .rings import ZZ, RingId, RingKind

UNIVERSE_SCOPE = "relative to the declared finite universe and maps"
FAMILY_SCOPE = "relative to the finite test family, not to all of FP_n"


class PredicateError(FpnkitError, ValueError):
    """A class predicate is undefined on some module."""


# ---------------------------------------------------------------------------
# the classical torsion part over Z


@dataclass(frozen=True)
class TorsionDecomposition:
    """``0 -> t(M) -> M -> M/t(M) -> 0`` with explicit maps."""

    module: Presentation
    torsion: Presentation
    quotient: Presentation
    inclusion: ModuleMap
    projection: ModuleMap


def torsion_subgroup(P: Presentation) -> TorsionDecomposition:
    """Torsion part of a finitely presented abelian group.

    With ``U A V = D`` in Smith form, ``y = U x`` diagonalises ``M``: the
    coordinates with ``d_i > 1`` span ``t(M)`` and the zero-diagonal
    coordinates give the free quotient.
    """
    if P.ring.kind is not RingKind.INTEGERS:
        raise UnsupportedRingError(f"torsion_subgroup needs Z, got {P.ring}")
    g = P.generators
    A = P.relations.to_rows()
    res = smith(A, g, P.relations.cols)
    diag = [res.diagonal[i] if i < len(res.diagonal) else 0 for i in range(g)]
    tors = [i for i in range(g) if diag[i] > 1]
    free = [i for i in range(g) if diag[i] == 0]
    k = len(tors)
    trel = [[diag[i] if r == c else 0 for c in range(k)] for r, i in enumerate(tors)]
    label = P.label or "M"
    T = Presentation(ZZ, k, RingMatrix.from_rows(ZZ, trel, k), f"t({label})")
    Q = Presentation.free(ZZ, len(free), f"{label}/t({label})")
    inc = RingMatrix.from_rows(ZZ, [[res.Uinv[r][i] for i in tors] for r in range(g)], k)
    proj = RingMatrix.from_rows(ZZ, [res.U[i] for i in free], g)
    return TorsionDecomposition(P, T, Q, ModuleMap(T, P, inc, "inclusion"),
                                ModuleMap(P, Q, proj, "surjection"))


def is_torsion(P: Presentation) -> bool:
    if P.ring.kind is not RingKind.INTEGERS:
        raise PredicateError(f"'torsion' is defined here for Z-modules, not {P.ring}")
    return 0 not in module_invariants(P)


def is_torsion_free(P: Presentation) -> bool:
    if P.ring.kind is not RingKind.INTEGERS:
        raise PredicateError(f"'torsion-free' is defined here for Z-modules, not {P.ring}")
    return all(d == 0 for d in module_invariants(P))


# ---------------------------------------------------------------------------
# universes


@dataclass
class ModuleUniverse:
    """Named modules plus declared inclusions and surjections.

    Homs between members are computed once on demand and cached.
    """

    ring: RingId
    modules: dict = field(default_factory=dict)
    maps: list = field(default_factory=list)
    _homs: dict = field(default_factory=dict, repr=False)

    def add(self, name: str, P: Presentation) -> None:
        if P.ring != self.ring:
            raise UnsupportedRingError(f"{name} is over {P.ring}, universe is over {self.ring}")
        self.modules[name] = P.with_label(P.label or name)

    def declare(self, source: str, target: str, matrix, kind: str) -> ModuleMap:
        if kind not in ("inclusion", "surjection"):
            raise ValueError(f"declared maps are inclusions or surjections, got {kind!r}")
        S, T = self.modules[source], self.modules[target]
        if not isinstance(matrix, RingMatrix):
            matrix = RingMatrix.from_rows(self.ring, matrix, S.generators)
        f = ModuleMap(S, T, matrix, kind)
        self.maps.append((source, target, f))
        return f

    def verify_maps(self) -> list:
        """Declared maps that are ill defined or not of their declared kind."""
        bad = []
        for s, t, f in self.maps:
            if not f.is_well_defined():
                bad.append((s, t, "not well defined"))
            elif f.kind == "inclusion" and not f.is_injective():
                bad.append((s, t, "not injective"))
            elif f.kind == "surjection" and not f.is_surjective():
                bad.append((s, t, "not surjective"))
        return bad

    def hom(self, a: str, b: str) -> AbGroupValue:
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = hom_module(self.modules[a], self.modules[b])
        return self._homs[key]


@dataclass(frozen=True)
class TorsionReport:
    axiom1_pairs_checked: int
    axiom1_failures: tuple
    maximality_T_failures: tuple
    maximality_F_failures: tuple
    closure_results: tuple
    map_failures: tuple
    scope: str = UNIVERSE_SCOPE

    @property
    def failures(self) -> int:
        return (len(self.axiom1_failures) + len(self.maximality_T_failures)
                + len(self.maximality_F_failures) + len(self.map_failures)
                + sum(1 for r in self.closure_results if not r[-1]))

    @property
    def verdict(self) -> str:
        return "pass" if self.failures == 0 else "fail"


def _classify(universe, pred, name):
    out = {}
    for key, P in universe.modules.items():
        try:
            out[key] = bool(pred(P))
        except PredicateError:
            raise
        except FpnkitError as exc:
            raise PredicateError(f"{name} undefined on {key}: {exc}") from exc
    return out


def check_torsion_pair(universe: ModuleUniverse, in_T: Callable, in_F: Callable) -> TorsionReport:
    """Check the torsion-pair clauses restricted to ``universe``.

    * ``Hom(T, F) = 0`` for every member of T and of F;
    * maximality: a member with no nonzero hom into any F-member is in T, and
      one with no nonzero hom from any T-member is in F;
    * declared surjections keep T, declared inclusions keep F;
    * direct sums of T-members stay in T, products of F-members stay in F.
    """
    T = _classify(universe, in_T, "T predicate")
    F = _classify(universe, in_F, "F predicate")
    Tn = [k for k, v in T.items() if v]
    Fn = [k for k, v in F.items() if v]
    ax = []
    checked = 0
    for t in Tn:
        for f in Fn:
            checked += 1
            h = universe.hom(t, f)
            if not h.is_zero:
                ax.append((t, f, str(h), h.witness))
    maxT = []
    for k in universe.modules:
        if not T[k] and all(universe.hom(k, f).is_zero for f in Fn):
            maxT.append((k, "Hom(-, F) = 0 for every F-member but outside T"))
    maxF = []
    for k in universe.modules:
        if not F[k] and all(universe.hom(t, k).is_zero for t in Tn):
            maxF.append((k, "Hom(T, -) = 0 for every T-member but outside F"))
    closure = []
    for s, t, f in universe.maps:
        if f.kind == "surjection" and T[s]:
            closure.append(("quotient", s, t, T[t]))
        if f.kind == "inclusion" and F[t]:
            closure.append(("submodule", s, t, F[s]))
    for a, b in itertools.combinations_with_replacement(Tn, 2):
        closure.append(("direct-sum", a, b, bool(in_T(universe.modules[a].direct_sum(universe.modules[b])))))
    for a, b in itertools.combinations_with_replacement(Fn, 2):
        closure.append(("product", a, b, bool(in_F(universe.modules[a].direct_sum(universe.modules[b])))))
    return TorsionReport(checked, tuple(ax), tuple(maxT), tuple(maxF), tuple(closure),
                         tuple(universe.verify_maps()))


def _z(*diag, extra_free: int = 0, label: str = "") -> Presentation:
    k = len(diag)
    rows = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(diag)]
    rows += [[0] * k for _ in range(extra_free)]
    return Presentation(ZZ, k + extra_free, RingMatrix.from_rows(ZZ, rows, k), label)


def classical_universe() -> ModuleUniverse:
    """Twelve abelian groups with declared quotients and inclusions."""
    U = ModuleUniverse(ZZ)
    members = {
        "0": _z(),
        "Z": _z(extra_free=1),
        "Z^2": _z(extra_free=2),
        "Z^3": _z(extra_free=3),
        "Z/2": _z(2),
        "Z/3": _z(3),
        "Z/4": _z(4),
        "Z/6": _z(6),
        "Z/2+Z/2": _z(2, 2),
        "Z/2+Z/4": _z(2, 4),
        "Z+Z/2": _z(2, extra_free=1),
        "Z+Z/6": _z(6, extra_free=1),
    }
    for name, P in members.items():
        U.add(name, P.with_label(name))
    U.declare("Z/4", "Z/2", [[1]], "surjection")
    U.declare("Z/6", "Z/2", [[1]], "surjection")
    U.declare("Z/6", "Z/3", [[1]], "surjection")
    U.declare("Z/2+Z/4", "Z/2+Z/2", [[1, 0], [0, 1]], "surjection")
    U.declare("Z/2+Z/4", "Z/4", [[0, 1]], "surjection")
    U.declare("Z/2", "0", RingMatrix.zeros(ZZ, 0, 1), "surjection")
    U.declare("Z+Z/2", "Z", [[0, 1]], "surjection")
    U.declare("Z", "Z/6", [[1]], "surjection")
    U.declare("Z", "Z^2", [[1], [0]], "inclusion")
    U.declare("Z^2", "Z^3", [[1, 0], [0, 1], [0, 0]], "inclusion")
    U.declare("Z", "Z", [[2]], "inclusion")
    U.declare("0", "Z", RingMatrix.zeros(ZZ, 1, 0), "inclusion")
    U.declare("Z/2", "Z/4", [[2]], "inclusion")
    U.declare("Z/3", "Z/6", [[2]], "inclusion")
    return U


# ---------------------------------------------------------------------------
# relative FP_n-injectivity and flatness


@dataclass(frozen=True)
class RelativeTestReport:
    module: str
    kind: str
    results: tuple  # (family member label, vanishes, value)
    scope: str = FAMILY_SCOPE

    @property
    def passes(self) -> bool:
        return all(v for _, v, _ in self.results)

    @property
    def failing(self) -> tuple:
        return tuple(r for r in self.results if not r[1])


def fpn_injective_test(M: Presentation, family, windows=()) -> RelativeTestReport:
    """``Ext^1(F, M) = 0`` for each ``F`` in ``family``."""
    res = []
    for F in family:
        v = ext_group(F, M, 1, windows)
        res.append((str(F), v.is_zero, v))
    return RelativeTestReport(str(M), "FP_n-injective", tuple(res))


def fpn_flat_test(M: Presentation, family, windows=()) -> RelativeTestReport:
    """``Tor_1(F, M) = 0`` for each ``F`` in ``family``."""
    res = []
    for F in family:
        v = tor_group(F, M, 1, windows)
        res.append((str(F), v.is_zero, v))
    return RelativeTestReport(str(M), "FP_n-flat", tuple(res))


def predicate_registry(family=None, windows=()) -> dict:
    """Class predicates by name (the relative ones need a family)."""
    reg = {"torsion": is_torsion, "torsion-free": is_torsion_free}
    if family is not None:
        reg["relative-fpn-injective"] = lambda P: fpn_injective_test(P, family, windows).passes
        reg["relative-fpn-flat"] = lambda P: fpn_flat_test(P, family, windows).passes
    return reg


# ---------------------------------------------------------------------------
# character duality sweep over Z/n


def quotient_modules(ring: RingId, max_generators: int = 2) -> list[Presentation]:
    """All ``R^k / S`` for ``k <= max_generators`` up to equality of ``S``.

    Submodules ``S`` of ``(Z/n)^k`` are enumerated as spans of ``k`` vectors
    and deduplicated by Howell form.
    """
    if ring.kind is not RingKind.MODULAR:
        raise UnsupportedRingError(f"duality sweeps need Z/n, got {ring}")
    n = ring.modulus
    out = []
    for k in range(1, max_generators + 1):
        seen = {}
        vectors = list(itertools.product(range(n), repeat=k))
        for gens in itertools.combinations_with_replacement(vectors, k):
            key = tuple(map(tuple, howell_rows([list(v) for v in gens], n, k)))
            if key not in seen:
                seen[key] = key
        for key in sorted(seen):
            cols = [list(r) for r in key]
            A = RingMatrix.from_columns(ring, cols, k)
            label = f"R^{k}/<{';'.join(','.join(map(str, c)) for c in cols)}>"
            out.append(Presentation(ring, k, A, label))
    return out


@dataclass(frozen=True)
class DualitySweep:
    ring: RingId
    modules: int
    pairs: int
    counterexamples: tuple

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def duality_sweep(ring: RingId, bound: str | int = "cyclic") -> DualitySweep:
    """``Tor_1(F, M) = 0`` iff ``Ext^1(F, M^+) = 0`` over all pairs up to the bound.

    ``bound`` is ``"cyclic"`` (quotients of ``R``), ``"two-generator"`` or an
    integer maximum number of generators.
    """
    k = {"cyclic": 1, "two-generator": 2}.get(bound, bound)
    mods = quotient_modules(ring, int(k))
    duals = [character_dual(M) for M in mods]
    bad = []
    for F in mods:
        for M, Mp in zip(mods, duals):
            tor = tor_group(F, M, 1)
            ext = ext_group(F, Mp, 1)
            if tor.is_zero != ext.is_zero:
                bad.append((str(F), str(M), str(tor), str(ext)))
    return DualitySweep(ring, len(mods), len(mods) ** 2, tuple(bad))
