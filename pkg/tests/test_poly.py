from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction

import pytest

from core.errors import DegreeError, PolynomialDivisionError, ZeroPolynomialError
from tools.poly import (
    Poly,
    Sign,
    format_rational,
    pderiv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_make,
    root_bound,
    sign_of,
    square_free_part,
)

MakePoly = Callable[..., Poly]


def test_poly_make_strips_trailing_zeros() -> None:
    p = poly_make([-2, 0, 1])
    assert p.coeffs == (Fraction(-2), Fraction(0), Fraction(1))
    assert p.degree == 2
    assert str(p) == "x^2 - 2"

    z = poly_make([0, 0, 0])
    assert z.is_zero
    assert z.degree == -1

    c = poly_make([5])
    assert c.degree == 0
    assert c.is_constant


def test_poly_eval_examples(make_poly: MakePoly) -> None:
    assert poly_eval(make_poly(-2, 0, 1), Fraction(0)) == -2
    assert poly_eval(make_poly(2, -3, 1), Fraction(3)) == 2
    assert poly_eval(Poly(), Fraction(7)) == 0
    # __call__ accepts plain ints
    assert make_poly(2, -3, 1)(3) == 2


def test_poly_divmod_examples(make_poly: MakePoly) -> None:
    p = make_poly(2, -3, 1)
    q = make_poly(9, -9, 2)
    quot, rem = poly_divmod(p, q)
    assert quot == Poly.const(Fraction(1, 2))
    assert rem == make_poly(Fraction(-5, 2), Fraction(3, 2))
    assert quot * q + rem == p

    quot, rem = divmod(make_poly(1, 0, 1), Poly.x())
    assert quot == Poly.x()
    assert rem == Poly.const(1)

    quot, rem = poly_divmod(Poly.x(), make_poly(1, 0, 1))
    assert quot.is_zero
    assert rem == Poly.x()


def test_poly_divmod_by_zero_raises(make_poly: MakePoly) -> None:
    with pytest.raises(PolynomialDivisionError):
        poly_divmod(make_poly(1, 1), Poly())
    # Still a ZeroDivisionError for callers that only know the builtin
    with pytest.raises(ZeroDivisionError):
        _ = make_poly(1, 1) % Poly()


def test_pderiv_examples(make_poly: MakePoly) -> None:
    assert pderiv(make_poly(2, -3, 1)) == make_poly(-3, 2)
    assert pderiv(Poly.const(5)).is_zero
    assert pderiv(Poly()).is_zero


def test_poly_gcd_examples(make_poly: MakePoly) -> None:
    p = make_poly(-2, 0, 1)
    assert poly_gcd(p, p) == p
    assert poly_gcd(Poly.from_roots([1, 2]), Poly.from_roots([1])) == make_poly(-1, 1)
    assert poly_gcd(p, make_poly(1, 0, 1)) == Poly.const(1)
    # Result is monic even when the inputs are not
    assert poly_gcd(p * 3, p * -5) == p
    with pytest.raises(ZeroPolynomialError):
        poly_gcd(Poly(), Poly())


def test_square_free_part_examples(make_poly: MakePoly) -> None:
    x = Poly.x()
    p = x**10 - 2 * x**5 + 1
    assert square_free_part(p) == x**5 - 1
    assert square_free_part(make_poly(-2, 0, 1)) == make_poly(-2, 0, 1)
    assert square_free_part(Poly.from_roots([1, 1])) == make_poly(-1, 1)
    with pytest.raises(ZeroPolynomialError):
        square_free_part(Poly())


def test_root_bound_examples(make_poly: MakePoly) -> None:
    assert root_bound(make_poly(-2, 0, 1)) == 3
    assert root_bound(make_poly(-2, 1)) == 3
    assert root_bound(make_poly(0, 0, 1)) == 1
    with pytest.raises(DegreeError):
        root_bound(Poly.const(4))


def test_primitive_rescales_by_positive_rational(make_poly: MakePoly) -> None:
    p = make_poly(Fraction(5, 2), Fraction(-3, 2))
    prim = p.primitive()
    assert prim == make_poly(5, -3)
    ratio = prim.lcoef / p.lcoef
    assert ratio > 0
    assert prim == p * ratio


def test_rendering_forms(make_poly: MakePoly) -> None:
    p = make_poly(Fraction(-5, 2), 0, 0, 1)
    assert p.to_str() == "x^3 - 5/2"
    assert p.to_str("y") == "y^3 - 5/2"
    assert p.to_coeff_list() == "[:-5/2, 0, 0, 1:]"
    assert str(Poly()) == "0"
    assert str(make_poly(0, -1)) == "-x"


def test_sign_and_rational_helpers() -> None:
    assert sign_of(Fraction(-1, 3)) is Sign.NEG
    assert sign_of(0) is Sign.ZERO
    assert sign_of(7) is Sign.POS
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    assert format_rational(Fraction(4, 2)) == "2"


def test_from_roots_and_power(make_poly: MakePoly) -> None:
    p = Poly.from_roots([1, 2])
    assert p == make_poly(2, -3, 1)
    assert Poly.x() ** 0 == Poly.const(1)
    with pytest.raises(ValueError):
        _ = Poly.x() ** -1
