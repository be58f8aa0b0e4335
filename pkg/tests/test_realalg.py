from __future__ import annotations

import random
from collections.abc import Callable
from fractions import Fraction

import pytest

from conftest import SQRT2_POLY, random_poly, random_rational
from core.errors import InvalidAlgebraicError
from tools.poly import Poly, Sign, sign_of
from tools.realalg import (
    AlgRep,
    Ordering,
    RatPoint,
    above,
    approx,
    below,
    compare,
    is_well_formed,
    mid_between,
    refine,
    sample_points,
    sign_at,
    valid_alg,
)

MakePoly = Callable[..., Poly]

SQRT2 = AlgRep(SQRT2_POLY, 0, 2)
NEG_SQRT2 = AlgRep(SQRT2_POLY, -2, Fraction(-1, 3))
SQRT2_NARROW = AlgRep(SQRT2_POLY, Fraction(7, 6), Fraction(19, 12))


def test_valid_alg_examples() -> None:
    assert valid_alg(SQRT2_POLY, Fraction(0), Fraction(2))
    assert not valid_alg(SQRT2_POLY, Fraction(-2), Fraction(2))
    assert valid_alg(SQRT2_POLY, Fraction(1), Fraction(3))
    # Reversed or degenerate intervals never isolate
    assert not valid_alg(SQRT2_POLY, Fraction(2), Fraction(0))
    assert not valid_alg(Poly(), Fraction(0), Fraction(2))


def test_valid_alg_needs_exactly_one_root(make_poly: MakePoly) -> None:
    # Sign change at the ends but three roots inside.
    p = Poly.from_roots([-1, 0, 1])
    assert not valid_alg(p, Fraction(-2), Fraction(2))
    assert valid_alg(p, Fraction(-1, 2), Fraction(1, 2))


def test_refine_examples() -> None:
    step1 = refine(SQRT2)
    assert step1 == AlgRep(SQRT2_POLY, 1, 2)
    assert refine(step1) == AlgRep(SQRT2_POLY, 1, Fraction(3, 2))
    assert refine(RatPoint(Fraction(2))) == RatPoint(Fraction(2))


def test_refine_collapses_exact_midpoint() -> None:
    a = AlgRep(Poly.from_roots([1, 5]), 0, 2)
    assert refine(a) == RatPoint(Fraction(1))


def test_refine_rejects_invalid() -> None:
    with pytest.raises(InvalidAlgebraicError):
        refine(AlgRep(SQRT2_POLY, -2, 2))


def test_approx_examples() -> None:
    eps = Fraction(1, 100)
    r = approx(SQRT2, eps)
    assert r > 0
    assert (r - eps) ** 2 < 2 < (r + eps) ** 2
    assert approx(RatPoint(Fraction(7, 3)), eps) == Fraction(7, 3)
    assert approx(SQRT2, 3) == 1
    with pytest.raises(ValueError):
        approx(SQRT2, 0)


def test_sign_at_examples(make_poly: MakePoly) -> None:
    assert sign_at(make_poly(-1, 1), SQRT2) is Sign.POS
    assert sign_at(SQRT2_POLY, SQRT2) is Sign.ZERO
    assert sign_at(make_poly(Fraction(-5, 2), 0, 0, 1), SQRT2) is Sign.POS
    assert sign_at(make_poly(-1, 1), NEG_SQRT2) is Sign.NEG
    assert sign_at(Poly.x(), RatPoint(Fraction(-3))) is Sign.NEG
    assert sign_at(Poly(), SQRT2) is Sign.ZERO


def test_sign_at_rejects_invalid_representation() -> None:
    with pytest.raises(InvalidAlgebraicError):
        sign_at(Poly.x(), AlgRep(SQRT2_POLY, -2, 2))


def test_sign_at_against_planted_rational_roots(rng: random.Random) -> None:
    # (x - r)(x^2 + 1) has r as its only real root, so (r - 1, r + 1) isolates it.
    for _ in range(100):
        r = random_rational(rng)
        a = AlgRep(Poly.from_roots([r]) * (Poly.x() ** 2 + 1), r - 1, r + 1)
        q = random_poly(rng, 5)
        assert sign_at(q, a) == sign_of(q(r))
        assert compare(a, RatPoint(r)) == Ordering.EQUAL


def test_compare_examples() -> None:
    assert compare(SQRT2, RatPoint(Fraction(3, 2))) == Ordering.LESS
    assert compare(RatPoint(Fraction(3, 2)), SQRT2) == Ordering.GREATER
    assert compare(SQRT2, AlgRep(SQRT2_POLY, 1, 3)) == Ordering.EQUAL
    assert compare(NEG_SQRT2, SQRT2_NARROW) == Ordering.LESS
    assert compare(SQRT2_NARROW, NEG_SQRT2) == Ordering.GREATER
    assert compare(RatPoint(Fraction(1)), RatPoint(Fraction(1))) == Ordering.EQUAL


def test_compare_distinct_roots_with_overlapping_intervals(make_poly: MakePoly) -> None:
    # sqrt(2) and sqrt(3) share no factor; their intervals overlap on (1, 2).
    sqrt3 = AlgRep(make_poly(-3, 0, 1), 1, 2)
    assert compare(SQRT2, sqrt3) == Ordering.LESS
    assert compare(sqrt3, SQRT2) == Ordering.GREATER
    # Same root through different defining polynomials.
    other = AlgRep(SQRT2_POLY * make_poly(-3, 0, 1), Fraction(13, 10), Fraction(3, 2))
    assert compare(other, SQRT2) == Ordering.EQUAL


def test_compare_rejects_invalid() -> None:
    with pytest.raises(InvalidAlgebraicError):
        compare(AlgRep(SQRT2_POLY, -2, 2), SQRT2)


def test_mid_between_examples() -> None:
    m = mid_between(NEG_SQRT2, SQRT2_NARROW)
    assert compare(NEG_SQRT2, RatPoint(m)) == Ordering.LESS
    assert compare(RatPoint(m), SQRT2_NARROW) == Ordering.LESS

    two = RatPoint(Fraction(2))
    m = mid_between(SQRT2, two)
    assert m < 2
    assert m * m > 2

    assert mid_between(RatPoint(Fraction(0)), RatPoint(Fraction(1))) == Fraction(1, 2)
    with pytest.raises(ValueError):
        mid_between(two, SQRT2)


def test_below_and_above_are_strict() -> None:
    for a in (SQRT2, NEG_SQRT2, RatPoint(Fraction(5))):
        assert compare(RatPoint(below(a)), a) == Ordering.LESS
        assert compare(RatPoint(above(a)), a) == Ordering.GREATER


def test_sample_points_decomposition() -> None:
    roots = [NEG_SQRT2, SQRT2_NARROW, RatPoint(Fraction(2))]
    samples = sample_points(roots)
    assert len(samples) == 7
    assert samples[1::2] == roots
    assert all(isinstance(s, RatPoint) for s in samples[0::2])
    for a, b in zip(samples, samples[1:]):
        assert compare(a, b) == Ordering.LESS


def test_sample_points_empty_is_zero() -> None:
    assert sample_points([]) == [RatPoint(Fraction(0))]


def test_well_formed_and_rendering() -> None:
    assert is_well_formed(RatPoint(Fraction(1, 2)))
    assert is_well_formed(SQRT2)
    assert not is_well_formed(AlgRep(SQRT2_POLY, 2, 3))
    assert str(NEG_SQRT2) == "Arep [:-2, 0, 1:] (-2) (-1/3)"
    assert str(RatPoint(Fraction(-1, 3))) == "Rat -1/3"
    assert SQRT2.width == 2
