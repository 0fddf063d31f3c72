from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpnkit.errors import HypothesisError, NotFinitelyGeneratedError
from fpnkit.modules import SyzygyGrowth
from fpnkit.rings import UElement, u_mul
from fpnkit.unitification import (
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

small_gens = st.builds(UElement.of, st.integers(-6, 6), st.lists(st.integers(1, 3), unique=True, max_size=3))
ideals = st.lists(small_gens, min_size=1, max_size=3).map(tuple).filter(lambda g: any(g)).map(IdealFG)


def _brute_member(I: IdealFG, x: UElement, width: int = 3, bound: int = 8) -> bool:
    """Search coefficients with |n| <= bound and supports in [1..width]."""
    coeffs = [UElement.of(n, s) for n in range(-bound, bound + 1)
              for k in range(width + 1) for s in itertools.combinations(range(1, width + 1), k)]
    gens = I.generators
    # reachable sums one generator at a time
    reach = {UElement(0)}
    for g in gens:
        prods = {u_mul(g, c) for c in coeffs}
        reach = {r + p for r in reach for p in prods}
    return x in reach


@settings(max_examples=60, deadline=None)
@given(ideals, small_gens)
def test_membership_against_bounded_search(I, x):
    res = ideal_membership(I, x)
    if res.member:
        acc = UElement(0)
        for g, k in zip(I.generators, res.coefficients):
            acc = acc + u_mul(g, k)
        assert acc == x
    else:
        assert res.obstruction in ("integer", "parity")
    if len(I.generators) <= 2:
        assert res.member == _brute_member(I, x)


@settings(max_examples=150, deadline=None)
@given(ideals)
def test_bezout_generates(I):
    r = bezout_reduce(I)
    assert r.verify()
    assert r.generator.m == math.gcd(*(g.m for g in I.generators))
    principal = IdealFG((r.generator,))
    assert all(ideal_membership(principal, g).member for g in I.generators)
    assert ideal_membership(I, r.generator).member


@settings(max_examples=80, deadline=None)
@given(ideals)
def test_odd_branch_support_is_minimal(I):
    r = bezout_reduce(I)
    d = r.generator.m
    S = sorted(set().union(*(set(g.support) for g in I.generators)))
    if r.branch == "even":
        assert set(r.generator.support) == set(S)
        return
    members = [set(c) for k in range(len(S) + 1) for c in itertools.combinations(S, k)
               if ideal_membership(I, UElement.of(d, c)).member]
    assert set(r.generator.support) in members
    assert all(set(r.generator.support) <= c for c in members)


@pytest.mark.parametrize("gens, expect", [
    ([UElement(2), UElement(4)], UElement(2)),
    ([UElement.of(2, (1,))], UElement.of(2, (1,))),
    ([UElement(3), UElement.of(0, (1,))], UElement(3)),
    ([UElement.of(4, (1,)), UElement.of(6, (2,))], UElement.of(2, (1, 2))),
])
def test_bezout_examples(gens, expect):
    r = bezout_reduce(IdealFG(tuple(gens)))
    assert r.generator == expect and r.verify()


def test_bezout_zero_ideal():
    with pytest.raises(ValueError):
        bezout_reduce(IdealFG.of(UElement(0)))


@pytest.mark.parametrize("m, a", [(1, ()), (3, ()), (3, (1,)), (-5, (2, 4)), (49, (1, 2, 3, 4))])
def test_principal_split(m, a):
    w = principal_split(m, a, samples=24, seed=1)
    assert w.ok
    assert w.section == UElement.of(1, a)
    assert u_mul(w.idempotent, w.idempotent) == w.idempotent
    x = UElement.of(m, a)
    for z in w.annihilator_generators:
        assert u_mul(x, z) == UElement(0) and u_mul(w.section, z) == UElement(0)


def test_principal_split_rejects_even():
    with pytest.raises(HypothesisError):
        principal_split(2, ())


@pytest.mark.parametrize("m2, a, windows, counts", [
    (2, (), (2, 4, 8), (2, 4, 8)),
    (2, (1,), (2, 4, 8), (1, 3, 7)),
    (4, (), (1,), (1,)),
    (6, (1, 3), (3, 5, 9), (1, 3, 7)),
])
def test_kernel_growth(m2, a, windows, counts):
    g = kernel_growth_witness(m2, a, windows)
    assert g.counts == counts and g.matches_formula
    if len(windows) >= 3:
        assert g.verdict == SyzygyGrowth(1, counts)
        assert g.tail_obstruction is not None


def test_kernel_growth_rejects_odd():
    with pytest.raises(HypothesisError):
        kernel_growth_witness(3, ())


@pytest.mark.parametrize("m, a, equation", [(3, (), (27, 9)), (5, (1, 2), (125, 25)), (-3, (), (-27, 9))])
def test_nonsplit(m, a, equation):
    r = nonsplit_extension_check(m, a)
    assert r.nonsplit and r.integer_equation == equation
    assert "no integer solution" in r.obstruction


def test_nonsplit_obstruction_text():
    assert nonsplit_extension_check(3).obstruction == "9 = 27*n has no integer solution"


@pytest.mark.parametrize("m", [1, -1, 2, 0])
def test_nonsplit_hypotheses(m):
    with pytest.raises(HypothesisError):
        nonsplit_extension_check(m)


def test_quotient_module_relations():
    C = quotient_module(3, (1,))
    assert C.label == "C(3;1)"
    x = UElement.of(3, (1,))
    *ann, r = C.relations.row(0)
    assert all(u_mul(x, z) == UElement(0) for z in ann)
    assert u_mul(x, r) == UElement.of(9, (1,))


def test_principal_ideal_presentation_requires_fg_annihilator():
    P = principal_ideal_presentation(UElement.of(3, (2,)))
    assert P.generators == 1
    with pytest.raises(NotFinitelyGeneratedError):
        principal_ideal_presentation(UElement(2))


def test_corpus_shape():
    corpus = fp2_corpus()
    assert len(corpus) == 12
    assert sum(e.kind == "free" for e in corpus) == 3
    labels = {e.module.label for e in corpus if e.kind == "quotient"}
    assert "C(3;)" in labels and "C(7;1,2)" in labels
