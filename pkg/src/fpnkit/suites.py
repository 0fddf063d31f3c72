"""Named suites replaying each desk-checkable claim, with deterministic reports."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field

from .errors import FpnkitError, ScheduleError
from .linalg.howell import howell_rows
from .linalg.matrix import RingMatrix
from .modules import (
    FPnVerified,
    ImageModule,
    Presentation,
    SyzygyGrowth,
    classify_fp,
    ext_group,
    is_projective,
    isomorphic,
    pd_at_most_one,
    resolve,
)
from .modules.functors import ModuleMap, hom_module
from .modules.resolution import check_schedule
from .rings import UU, RingId, SqZeroElement, UElement, format_u, u_mul
from .torsion import (
    ModuleUniverse,
    check_torsion_pair,
    classical_universe,
    duality_sweep,
    fpn_injective_test,
    is_torsion,
    is_torsion_free,
    torsion_subgroup,
)
from .unitification import (
    CORPUS_M,
    CORPUS_SUPPORTS,
    IdealFG,
    bezout_reduce,
    fp2_corpus,
    ideal_membership,
    kernel_growth_witness,
    nonsplit_extension_check,
    principal_ideal_presentation,
    principal_split,
    quotient_module,
)

# Fixed anchor table: every check names the mathematical claim it replays.
ANCHORS = {
    "sq-quotient-fp1": "R/(x1) over k[x1,x2,...]/(xi xj) is finitely presented",
    "sq-quotient-not-fp2": "R/(x1) over k[x1,x2,...]/(xi xj) is not FP_2",
    "sq-ideal-not-fp1": "the ideal (x1) of k[x1,x2,...]/(xi xj) is FP_0 but not FP_1",
    "z4-periodic": "the ideal 2Z/4Z has the periodic resolution ... -> Z/4 -2-> Z/4 -2-> I -> 0",
    "z4-not-projective": "the ideal 2Z/4Z of Z/4 is not projective",
    "z4-fp-infinity": "the ideal 2Z/4Z of Z/4 lies in FP_infinity",
    "u-bezout": "the unitification ring Z + (+)Z/2 is a Bezout ring",
    "u-bezout-even": "even gcd d: I = <(d, sum of e_i over the union of supports)>",
    "u-bezout-odd": "odd gcd d: I = <(d,c)> for the minimal-support c with (d,c) in I",
    "u-odd-projective": "(m,a)R is projective for odd m via (m,a) -> (1,a)",
    "u-even-not-fp1": "(2m,a)R is FP_0 but not FP_1: ker = 0 + (Z/2)^(N minus supp a)",
    "u-nonsplit": "0 -> (m^2,a)R -> (m,a)R -> C -> 0 does not split for odd |m| > 1",
    "u-ext-nonzero": "Ext^1(C, (m^2,a)R) is nonzero, so (m^2,a)R is not FP_2-injective",
    "u-pd-le-1": "pd M <= 1 for M in FP_n over a ring of weak global dimension <= 1",
    "z4-character-duality": "F is FP_n-flat iff its character module is FP_n-injective",
    "z-torsion-pair": "(torsion groups, torsion-free groups) is a torsion pair",
    "z-torsion-functorial": "t(t(M)) = t(M) and t(M/t(M)) = 0",
    "fp-inj-quotients": "quotients of FP_n-injective modules are FP_n-injective (n >= 2)",
    "fp-inj-dimension": "FP_n-injective dimension at most one: Ext^2(F, M) = 0 for F in FP_n",
    "fp-inj-relative": "relative injectivity against a family passes for every subfamily",
}

SUITES = (
    "example1-chain",
    "z4-ideal",
    "appendixA-bezout",
    "appendixA-splittings",
    "appendixA-kernel-growth",
    "nontrivial-torsion",
    "duality-z4",
    "classical-torsion-z",
    "teo-big-desk",
)


class UnknownSuiteError(FpnkitError, KeyError):
    pass


class ConfigError(FpnkitError, ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    windows: tuple = (2, 4, 8, 16)
    seed: int = 0
    samples: int = 200
    format: str = "human"

    def __post_init__(self):
        try:
            object.__setattr__(self, "windows", check_schedule(self.windows))
        except ScheduleError as exc:
            raise ConfigError(str(exc)) from None
        if not self.windows:
            raise ConfigError("the window schedule is empty")
        if self.format not in ("human", "jsonl"):
            raise ConfigError(f"format must be 'human' or 'jsonl', got {self.format!r}")
        if self.samples < 0:
            raise ConfigError("samples must be nonnegative")

    def echo(self) -> dict:
        d = asdict(self)
        d["windows"] = list(self.windows)
        return d


@dataclass
class Check:
    claim: str
    anchor: str
    status: str
    data: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    config: SuiteConfig
    checks: list = field(default_factory=list)

    def add(self, claim: str, anchor: str, ok: bool | None, **data) -> None:
        if anchor not in ANCHORS:
            raise KeyError(f"anchor {anchor!r} is not in the anchor table")
        status = "evidence" if ok is None else ("pass" if ok else "fail")
        self.checks.append(Check(claim, anchor, status, data))

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "evidence": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def records(self) -> list[dict]:
        recs = []
        for i, c in enumerate(self.checks):
            recs.append({"suite": self.suite, "index": i, "claim": c.claim, "anchor": c.anchor,
                         "anchor_text": ANCHORS[c.anchor], "status": c.status, "data": c.data})
        recs.append({"suite": self.suite, "summary": self.summary, "config": self.config.echo(),
                     "status": "pass" if self.ok else "fail"})
        return recs

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True, default=str) + "\n" for r in self.records())

    def to_human(self) -> str:
        lines = [f"suite {self.suite} (seed {self.config.seed}, windows "
                 f"{','.join(map(str, self.config.windows))})"]
        for c in self.checks:
            extra = "; ".join(f"{k}={_short(v)}" for k, v in c.data.items())
            lines.append(f"[{c.status.upper():8}] {c.claim}" + (f"  ({extra})" if extra else ""))
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['evidence']} evidence: "
                     f"{'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return self.to_jsonl() if self.config.format == "jsonl" else self.to_human()


def _short(v, limit: int = 80) -> str:
    text = json.dumps(v, sort_keys=True, default=str) if not isinstance(v, str) else v
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _supports(bound: int):
    for mask in range(1 << bound):
        yield tuple(i + 1 for i in range(bound) if mask >> i & 1)


# ---------------------------------------------------------------------------
# suites


def _example1(rep: SuiteReport) -> None:
    ws = rep.config.windows
    for fld in ("F2", "Q"):
        ring = RingId.square_zero(fld)
        x1 = SqZeroElement.var(1, fld)
        quotient = Presentation.cyclic(ring, x1, label="R/(x1)")
        cert = classify_fp(quotient, 2, ws)
        v = cert.verdict
        rep.add(f"SQ[{fld}] R/(x1) in FP_1", "sq-quotient-fp1", cert.level_verified == 1,
                level=cert.level_verified)
        grow = isinstance(v, SyzygyGrowth) and v.stage == 2 and v.counts == ws
        rep.add(f"SQ[{fld}] R/(x1) not in FP_2 (stage-2 counts equal the windows)",
                "sq-quotient-not-fp2", grow, verdict=str(v), counts=list(getattr(v, "counts", ())),
                tail=str(cert.tail_obstruction))
        ideal = ImageModule.ideal(ring, x1, label="(x1)")
        cert = classify_fp(ideal, 1, ws)
        v = cert.verdict
        ok = (cert.level_verified == 0 and isinstance(v, SyzygyGrowth) and v.stage == 1
              and v.counts == ws)
        rep.add(f"SQ[{fld}] (x1) in FP_0 but not FP_1", "sq-ideal-not-fp1", ok, verdict=str(v))


def _z4_ideal(rep: SuiteReport) -> None:
    Z4 = RingId.modular(4)
    ideal = Presentation.cyclic(Z4, 2, label="I")
    depth = 5
    res = resolve(ideal, depth)
    base = howell_rows([list(c) for c in ideal.relations.columns()], 4, 1)
    periodic = True
    for k, d in enumerate(res.differentials, start=1):
        same = (d.rows == 1 and howell_rows([list(c) for c in d.columns()], 4, d.rows) == base)
        omega = Presentation(Z4, d.rows, d, f"Omega^{k - 1}")
        periodic &= same and isomorphic(omega, ideal)
    rep.add("resolution of I = 2Z/4Z is multiplication by 2 through depth 5", "z4-periodic",
            periodic and res.verify(), depth=depth)
    proj = is_projective(ideal)
    rep.add("I is not projective", "z4-not-projective", not proj.projective,
            obstruction=proj.obstruction)
    cert = classify_fp(ideal, depth)
    rep.add("I in FP_5 (finite free stages)", "z4-fp-infinity",
            cert.verdict == FPnVerified(depth), verdict=str(cert.verdict))


def _bezout(rep: SuiteReport) -> None:
    examples = [
        (IdealFG.of(UElement(2), UElement(4)), UElement(2)),
        (IdealFG.of(UElement.of(2, (1,))), UElement.of(2, (1,))),
        (IdealFG.of(UElement(3), UElement.of(0, (1,))), UElement(3)),
    ]
    for I, expect in examples:
        r = bezout_reduce(I)
        anchor = "u-bezout-even" if r.branch == "even" else "u-bezout-odd"
        rep.add(f"reduce {I}", anchor, r.generator == expect and r.verify(),
                generator=format_u(r.generator))
    rng = random.Random(rep.config.seed)
    ok = 0
    odd = even = 0
    failures = []
    for _ in range(rep.config.samples):
        k = rng.randint(1, 4)
        gens = tuple(UElement.of(rng.randint(-60, 60), [i for i in range(1, 9) if rng.random() < 0.3])
                     for _ in range(k))
        I = IdealFG(gens)
        if I.normalized() is None:
            gens = gens + (UElement(rng.choice((1, 2, 3))),)
            I = IdealFG(gens)
        r = bezout_reduce(I)
        # independent re-check: products by u_mul, then membership both ways
        fwd = all(u_mul(r.generator, c) == g for g, c in zip(r.ideal.generators, r.forward))
        back = ideal_membership(r.ideal, r.generator).member
        principal = IdealFG((r.generator,))
        mem = all(ideal_membership(principal, g).member for g in I.generators)
        good = fwd and back and mem and r.verify() and r.generator.m >= 0
        ok += good
        odd += r.branch == "odd"
        even += r.branch == "even"
        if not good:
            failures.append(str(I))
    rep.add(f"{ok}/{rep.config.samples} random ideals reduce to a principal generator",
            "u-bezout", ok == rep.config.samples, verified=ok, samples=rep.config.samples,
            odd_branch=odd, even_branch=even, failures=failures[:5])


def _splittings(rep: SuiteReport) -> None:
    fails = []
    count = 0
    for m in range(3, 50, 2):
        for a in _supports(4):
            w = principal_split(m, a, samples=16, seed=rep.config.seed + m)
            count += 1
            if not w.ok:
                fails.append((m, a, w.failures[:2]))
    rep.add("split witnesses for odd m in [3..49], supports in [1..4]", "u-odd-projective",
            not fails, cases=count, failures=fails[:5])
    for m, a in ((1, ()), (3, ()), (3, (1,))):
        w = principal_split(m, a, seed=rep.config.seed)
        rep.add(f"section ({m}; {','.join(map(str, a))}) -> {format_u(w.section)}",
                "u-odd-projective", w.ok, idempotent=format_u(w.idempotent))


def _kernel_growth(rep: SuiteReport) -> None:
    ws = rep.config.windows
    for m2, a in ((2, ()), (2, (1,)), (4, ()), (6, (1, 2))):
        g = kernel_growth_witness(m2, a, ws)
        ok = g.matches_formula and (len(ws) < 3 or isinstance(g.verdict, SyzygyGrowth))
        rep.add(f"ker(R -> ({m2}; {','.join(map(str, a))})R) counts match |[1..B] minus supp a|",
                "u-even-not-fp1", ok, counts=list(g.counts), expected=list(g.expected),
                verdict=str(g.verdict))
    g = kernel_growth_witness(4, (), (1,))
    rep.add("ker(R -> (4; )R) at window 1 has one generator", "u-even-not-fp1",
            g.counts == (1,), counts=list(g.counts))


def _corpus_pairs():
    for m in CORPUS_M:
        for a in CORPUS_SUPPORTS:
            C = quotient_module(m, a)
            N = principal_ideal_presentation(UElement.of(m * m, a))
            yield m, a, C, N


def _nontrivial_torsion(rep: SuiteReport) -> None:
    bad = []
    total = 0
    for m in range(3, 100, 2):
        for a in _supports(4):
            total += 1
            if not nonsplit_extension_check(m, a).nonsplit:
                bad.append((m, a))
    rep.add(f"no splitting for odd m in [3..99], supports in [1..4] ({total} cases)",
            "u-nonsplit", not bad, cases=total, exceptions=bad[:5])
    ext_ok = 0
    inj_fail = 0
    for m, a, C, N in _corpus_pairs():
        e = ext_group(C, N, 1)
        ext_ok += not e.is_zero
        t = fpn_injective_test(N, [C])
        inj_fail += not t.passes
    n = len(CORPUS_M) * len(CORPUS_SUPPORTS)
    rep.add(f"Ext^1(C, (m^2,a)R) != 0 for all {n} corpus pairs", "u-ext-nonzero", ext_ok == n,
            nonzero=ext_ok)
    rep.add("(m^2,a)R fails the relative FP_2-injectivity test against C(m,a)", "u-ext-nonzero",
            inj_fail == n, failing=inj_fail)
    corpus = fp2_corpus()
    pd = sum(pd_at_most_one(e.module) for e in corpus)
    rep.add(f"pd <= 1 for the {len(corpus)} corpus modules", "u-pd-le-1", pd == len(corpus),
            holds=pd)


def _duality(rep: SuiteReport) -> None:
    for n, bound in ((4, "two-generator"), (9, "cyclic"), (2, "two-generator")):
        s = duality_sweep(RingId.modular(n), bound)
        rep.add(f"Z/{n} {bound}: Tor_1(F,M) = 0 iff Ext^1(F,M+) = 0", "z4-character-duality",
                s.ok, modules=s.modules, pairs=s.pairs, counterexamples=list(s.counterexamples))


def _classical(rep: SuiteReport) -> None:
    U = classical_universe()
    r = check_torsion_pair(U, is_torsion, is_torsion_free)
    rep.add(f"classical pair on the {len(U.modules)}-module universe", "z-torsion-pair",
            r.verdict == "pass", pairs=r.axiom1_pairs_checked, failures=r.failures,
            closure_checks=len(r.closure_results), scope=r.scope)
    func = True
    orth = True
    for name, P in U.modules.items():
        d = torsion_subgroup(P)
        tt = torsion_subgroup(d.torsion)
        func &= isomorphic(tt.torsion, d.torsion)
        func &= torsion_subgroup(d.quotient).torsion.generators == 0
        func &= d.inclusion.is_injective() and d.projection.is_surjective()
        for other in U.modules.values():
            q = torsion_subgroup(other).quotient
            orth &= hom_module(d.torsion, q).is_zero
    rep.add("t(t(M)) = t(M) and t(M/t(M)) = 0 for every member", "z-torsion-functorial", func)
    rep.add("Hom(t(M), N/t(N)) = 0 for all pairs", "z-torsion-pair", orth)
    small = ModuleUniverse(U.ring)
    for name in ("Z", "Z/2", "Z/6", "Z^2", "Z+Z/2"):
        small.add(name, U.modules[name])
    only = lambda P: isomorphic(P, U.modules["Z/2"])  # noqa: E731
    r2 = check_torsion_pair(small, only, is_torsion_free)
    flagged = [k for k, _ in r2.maximality_T_failures]
    rep.add("T = {Z/2} alone fails maximality and the report lists Z/6", "z-torsion-pair",
            r2.verdict == "fail" and "Z/6" in flagged, flagged=flagged)


def _teo_big(rep: SuiteReport) -> None:
    corpus = [e.module for e in fp2_corpus()]
    targets = corpus + [N for _, _, _, N in _corpus_pairs()]
    nonzero = []
    for F in corpus:
        for M in targets:
            if not ext_group(F, M, 2).is_zero:
                nonzero.append((str(F), str(M)))
    rep.add(f"Ext^2(F, M) = 0 for {len(corpus)} x {len(targets)} corpus pairs",
            "fp-inj-dimension", not nonzero, pairs=len(corpus) * len(targets),
            nonzero=nonzero[:5])
    families = {m: [quotient_module(m, a) for a in CORPUS_SUPPORTS] for m in CORPUS_M}
    surjections = []
    R1 = Presentation.free(UU, 1, "R")
    one = RingMatrix.identity(UU, 1)
    for m in CORPUS_M:
        chain = [quotient_module(m, a) for a in CORPUS_SUPPORTS]
        surjections.append(ModuleMap(R1, chain[0], one, "surjection"))
        for src, dst in zip(chain, chain[1:]):
            surjections.append(ModuleMap(src, dst, one, "surjection"))
    checked = violations = 0
    for f in surjections:
        if not (f.is_well_defined() and f.is_surjective()):
            violations += 1
            continue
        for m0, fam in families.items():
            if fpn_injective_test(f.source, fam).passes:
                checked += 1
                if not fpn_injective_test(f.target, fam).passes:
                    violations += 1
    rep.add("relative FP_2-injectivity passes to declared quotients", "fp-inj-quotients",
            violations == 0, surjections=len(surjections), premises_met=checked)
    mono = True
    for M in corpus[:9]:
        for fam in families.values():
            full = fpn_injective_test(M, fam)
            for k in range(len(fam)):
                sub = fam[:k] + fam[k + 1:]
                if full.passes and not fpn_injective_test(M, sub).passes:
                    mono = False
    rep.add("relative injectivity survives passing to subfamilies", "fp-inj-relative", mono)


_RUNNERS = {
    "example1-chain": _example1,
    "z4-ideal": _z4_ideal,
    "appendixA-bezout": _bezout,
    "appendixA-splittings": _splittings,
    "appendixA-kernel-growth": _kernel_growth,
    "nontrivial-torsion": _nontrivial_torsion,
    "duality-z4": _duality,
    "classical-torsion-z": _classical,
    "teo-big-desk": _teo_big,
}


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    if name not in _RUNNERS:
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    config = config or SuiteConfig(name)
    rep = SuiteReport(name, config)
    _RUNNERS[name](rep)
    return rep


__all__ = ["ANCHORS", "SUITES", "SuiteConfig", "SuiteReport", "run_suite", "Check", "ConfigError", "UnknownSuiteError"]
