from __future__ import annotations

import random

import pytest

from fpnkit.errors import (
    DimensionError,
    NotFinitelyGeneratedError,
    RingMismatchError,
    ScheduleError,
    UnsupportedRingError,
)
from fpnkit.linalg import RingMatrix
from fpnkit.modules import (
    FPnVerified,
    ImageModule,
    Inconclusive,
    Presentation,
    SyzygyGrowth,
    character_dual,
    classify_fp,
    is_projective,
    isomorphic,
    module_invariants,
    pd_at_most_one,
    resolve,
    syzygy,
)
from fpnkit.rings import RingId, SqZeroElement, UElement

from oracles import FiniteModule, ext1_order, hom_count

ZZ = RingId.integers()
Z4 = RingId.modular(4)
SQ2 = RingId.square_zero("F2")


def test_presentation_validation():
    with pytest.raises(DimensionError):
        Presentation(ZZ, 2, RingMatrix.from_rows(ZZ, [[1]], 1))
    with pytest.raises(RingMismatchError):
        Presentation(ZZ, 1, RingMatrix.from_rows(Z4, [[1]], 1))
    zero = Presentation.free(ZZ, 0)
    assert zero.generators == 0 and zero.num_relations == 0


def test_syzygy_examples():
    omega = syzygy(Presentation.cyclic(ZZ, 2))
    assert omega.generators == 1 and omega.relations.is_zero()
    I = Presentation.cyclic(Z4, 2)
    assert isomorphic(syzygy(I), I)
    x1 = SqZeroElement.var(1)
    q = Presentation.cyclic(SQ2, x1)
    with pytest.raises(NotFinitelyGeneratedError) as info:
        syzygy(q)
    assert info.value.evidence is not None
    for w in (2, 3, 5):
        omega = syzygy(q, w)
        assert omega.window == w and omega.num_relations == w


def test_syzygy_of_ideal_image():
    # (2) of Z is free on its generator, so ker(R -> (2)) = 0
    assert syzygy(ImageModule.ideal(ZZ, 2)).generators == 0
    # (2) of Z/4 is killed by 2: ker(R -> (2)) = (2) again
    omega = syzygy(ImageModule.ideal(Z4, 2))
    assert isomorphic(omega, Presentation.cyclic(Z4, 2))


@pytest.mark.parametrize("ring, module, depth", [
    (ZZ, Presentation.cyclic(ZZ, 2), 3),
    (ZZ, Presentation(ZZ, 2, RingMatrix.from_rows(ZZ, [[2, 4], [6, 8]], 2)), 4),
    (Z4, Presentation.cyclic(Z4, 2), 5),
    (RingId.modular(12), Presentation(RingId.modular(12), 2, RingMatrix.from_rows(RingId.modular(12), [[2, 3], [4, 6]], 2)), 4),
    (ZZ, Presentation.free(ZZ, 3), 3),
])
def test_resolution_invariants(ring, module, depth):
    res = resolve(module, depth)
    assert len(res.differentials) == depth
    assert res.composites_vanish() and res.verify() and res.exact


def test_resolution_examples():
    res = resolve(Presentation.cyclic(ZZ, 2), 3)
    assert [d.cols for d in res.differentials[1:]] == [0, 0]
    res = resolve(Presentation.cyclic(Z4, 2), 5)
    assert all(d.to_rows() == [[2]] for d in res.differentials)
    res = resolve(Presentation.free(ZZ, 2), 4)
    assert all(d.is_zero() for d in res.differentials)


def test_windowed_resolution_verifies():
    q = Presentation.cyclic(SQ2, SqZeroElement.var(1))
    res = resolve(q, 3, (2, 4))
    assert not res.exact and res.composites_vanish() and res.verify(4)
    with pytest.raises(ValueError):
        resolve(q, 0)


def test_classify_integers():
    M = Presentation(ZZ, 2, RingMatrix.from_rows(ZZ, [[2, 0], [0, 3]], 2))
    cert = classify_fp(M, 3)
    assert cert.verdict == FPnVerified(3) and cert.level_verified == 3
    assert cert.resolution.verify()
    assert classify_fp(M, 0).verdict == FPnVerified(0)


def test_classify_square_zero_quotient():
    q = Presentation.cyclic(SQ2, SqZeroElement.var(1))
    cert = classify_fp(q, 2, (2, 4, 8))
    assert cert.level_verified == 1
    assert cert.verdict == SyzygyGrowth(2, (2, 4, 8))
    assert [cert.stage_generator_counts[(2, w)] for w in (2, 4, 8)] == [2, 4, 8]
    assert str(cert.verdict) == "SyzygyGrowth(stage 2, counts 2,4,8)"


def test_classify_square_zero_ideal():
    ideal = ImageModule.ideal(SQ2, SqZeroElement.var(1))
    cert = classify_fp(ideal, 1, (2, 4, 8))
    assert cert.level_verified == 0
    assert cert.verdict == SyzygyGrowth(1, (2, 4, 8))


def test_classify_short_schedule_is_inconclusive():
    q = Presentation.cyclic(SQ2, SqZeroElement.var(1))
    cert = classify_fp(q, 2, (2, 4))
    assert isinstance(cert.verdict, Inconclusive) and cert.level_verified == 1


def test_classify_window_restricted_presentation_is_inconclusive():
    q = syzygy(Presentation.cyclic(SQ2, SqZeroElement.var(1)), 3)
    assert isinstance(classify_fp(q, 2, (2, 4, 8)).verdict, Inconclusive)


def test_classify_unitification_principal_ideals():
    U = RingId.unitification()
    odd = ImageModule.ideal(U, UElement.of(3, (1,)))
    assert classify_fp(odd, 3, (2, 4, 8)).verdict == FPnVerified(3)
    even = ImageModule.ideal(U, UElement(2))
    cert = classify_fp(even, 2, (2, 4, 8, 16))
    assert cert.verdict == SyzygyGrowth(1, (2, 4, 8, 16))


def _certificate_cases():
    U = RingId.unitification()
    return [
        (Presentation(ZZ, 2, RingMatrix.from_rows(ZZ, [[2, 0], [0, 3]], 2)), ()),
        (Presentation.cyclic(Z4, 2), ()),
        (Presentation.cyclic(SQ2, SqZeroElement.var(1)), (2, 4, 8)),
        (ImageModule.ideal(SQ2, SqZeroElement.var(1)), (2, 4, 8)),
        (ImageModule.ideal(U, UElement.of(3, (1,))), (2, 4, 8)),
        (ImageModule.ideal(U, UElement(2)), (2, 4, 8)),
    ]


@pytest.mark.parametrize("case", range(6))
def test_certificate_is_monotone_in_level(case):
    M, windows = _certificate_cases()[case]
    top = classify_fp(M, 3, windows).level_verified
    for n in range(4):
        cert = classify_fp(M, n, windows)
        assert cert.level_verified == min(n, top)
        if cert.level_verified == n:
            assert cert.verdict == FPnVerified(n)


@pytest.mark.parametrize("windows", [(4, 2), (2, 2), (0, 3), (-1,)])
def test_invalid_schedules(windows):
    with pytest.raises(ScheduleError):
        classify_fp(Presentation.cyclic(SQ2, SqZeroElement.var(1)), 2, windows)


def test_negative_level():
    with pytest.raises(ValueError):
        classify_fp(Presentation.cyclic(ZZ, 2), -1)


def _projective_by_ext(n, g, cols):
    """Projective iff Ext^1(M, R/p) = 0 for every prime p | n (finite length, enumeration)."""
    M = FiniteModule(n, g, cols)
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    return all(ext1_order(M, FiniteModule(n, 1, [(p,)])) == 1 for p in primes)


@pytest.mark.parametrize("n", [4, 6, 12, 9])
def test_projectivity_against_enumeration(n):
    rng = random.Random(n)
    R = RingId.modular(n)
    seen = set()
    for _ in range(40):
        g = rng.randint(1, 2)
        cols = [tuple(rng.randrange(n) for _ in range(g)) for _ in range(rng.randint(0, 2))]
        P = Presentation(R, g, RingMatrix.from_columns(R, cols, g))
        res = is_projective(P)
        expect = _projective_by_ext(n, g, cols)
        assert res.projective == expect, (n, cols)
        seen.add(expect)
        if res.projective:
            X = res.section
            assert (X @ X).to_rows() == X.to_rows()
            assert (X @ P.relations).is_zero()
    assert seen == {True, False} or n == 6


def test_projectivity_examples():
    I = Presentation.cyclic(Z4, 2)
    res = is_projective(I)
    assert not res and res.section is None and res.obstruction
    assert is_projective(Presentation.free(ZZ, 3))
    assert is_projective(Presentation.cyclic(ZZ, 1))
    assert not is_projective(Presentation.cyclic(ZZ, 2))


def test_pd_at_most_one():
    assert pd_at_most_one(Presentation.cyclic(ZZ, 6))
    assert not pd_at_most_one(Presentation.cyclic(Z4, 2))
    q = Presentation.cyclic(SQ2, SqZeroElement.var(1))
    with pytest.raises(NotFinitelyGeneratedError):
        pd_at_most_one(q)


@pytest.mark.parametrize("n, g, cols", [
    (2, 1, [(0,)]),
    (4, 2, [(0, 2)]),
    (4, 1, [(1,)]),
    (12, 2, [(2, 4), (6, 0)]),
    (9, 2, [(3, 3)]),
])
def test_character_dual(n, g, cols):
    R = RingId.modular(n)
    P = Presentation(R, g, RingMatrix.from_columns(R, cols, g))
    D = character_dual(P)
    M = FiniteModule(n, g, cols)
    chars = hom_count(M, FiniteModule(n, 1, []))
    assert chars == M.order
    Dm = FiniteModule(n, D.generators, D.relations.columns())
    assert Dm.order == chars
    assert module_invariants(D) == module_invariants(P)


def test_character_dual_examples():
    Z2 = RingId.modular(2)
    assert str(module_invariants(character_dual(Presentation.free(Z2, 1)))) == "(2,)"
    assert module_invariants(character_dual(Presentation.cyclic(Z4, 1))) == ()
    with pytest.raises(UnsupportedRingError):
        character_dual(Presentation.cyclic(ZZ, 2))
