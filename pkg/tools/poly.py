"""Exact dense univariate polynomials over the rationals.

Polynomials are immutable, hashable values with coefficients stored in
ascending order (index ``i`` holds the coefficient of ``x**i``) and no
trailing zeros; the empty tuple is the zero polynomial. All arithmetic uses
``fractions.Fraction`` and is exact.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

from core.errors import DegreeError, PolynomialDivisionError, ZeroPolynomialError

Rational = Fraction
RationalLike = Fraction | int


class Sign(IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1


def sign_of(value: RationalLike) -> Sign:
    """Return the sign of a rational (or integer) value."""
    if value > 0:
        return Sign.POS
    if value < 0:
        return Sign.NEG
    return Sign.ZERO


def format_rational(value: RationalLike) -> str:
    """Canonical text for a rational: ``n`` or ``n/d`` (never a float)."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _strip(coeffs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with rational coefficients in ascending order."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        # Canonical form is enforced on every construction path.
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    # -----------------
    # Constructors
    # -----------------

    @classmethod
    def const(cls, c: RationalLike) -> Poly:
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> Poly:
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> Poly:
        """Monic product of ``(x - r)`` over ``roots`` (repeats allowed)."""
        out = cls.const(1)
        for r in roots:
            out = out * cls((-Fraction(r), Fraction(1)))
        return out

    # -----------------
    # Basic properties
    # -----------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lcoef(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, Fraction(x))

    # -----------------
    # Ring operations
    # -----------------

    def __add__(self, other: Poly | RationalLike) -> Poly:
        o = _as_poly(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly | RationalLike) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: RationalLike) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other: Poly | RationalLike) -> Poly:
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(tuple(c * a for a in self.coeffs))
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative exponent")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return poly_divmod(self, other)

    def __mod__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[0]

    # -----------------
    # Normalizations
    # -----------------

    def monic(self) -> Poly:
        if self.is_zero:
            return self
        return self * (1 / self.lcoef)

    def primitive(self) -> Poly:
        """Rescale by a positive rational to coprime integer coefficients."""
        if self.is_zero:
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        num = math.gcd(*(c.numerator for c in self.coeffs))
        return self * Fraction(den, num)

    # -----------------
    # Rendering
    # -----------------

    def to_str(self, var: str = "x") -> str:
        """Render in parseable expression syntax, highest degree first."""
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def to_coeff_list(self) -> str:
        """Render as an ascending coefficient list, e.g. ``[:-2, 0, 1:]``."""
        return "[:" + ", ".join(format_rational(c) for c in self.coeffs) + ":]"

    def __str__(self) -> str:
        return self.to_str()


def _as_poly(value: Poly | RationalLike) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(value)


# -----------------------------
# Public operations
# -----------------------------


def poly_make(coeffs: Sequence[RationalLike]) -> Poly:
    """Build a canonical polynomial from ascending coefficients."""
    return Poly(tuple(Fraction(c) for c in coeffs))


def poly_eval(p: Poly, x: Fraction) -> Fraction:
    """Exact Horner evaluation of ``p`` at ``x``."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``p = quot*q + rem`` with ``deg rem < deg q``.

    Raises:
        PolynomialDivisionError: if ``q`` is the zero polynomial.
    """
    if q.is_zero:
        raise PolynomialDivisionError("division by the zero polynomial")
    if p.degree < q.degree:
        return Poly(), p
    rem = list(p.coeffs)
    dq = q.degree
    lc = q.lcoef
    quot = [Fraction(0)] * (p.degree - dq + 1)
    for k in range(p.degree - dq, -1, -1):
        c = rem[k + dq] / lc
        quot[k] = c
        if c == 0:
            continue
        for j, b in enumerate(q.coeffs):
            rem[k + j] -= c * b
    return Poly(tuple(quot)), Poly(tuple(rem[:dq]))


def pderiv(p: Poly) -> Poly:
    """Formal derivative."""
    return Poly(tuple(i * c for i, c in enumerate(p.coeffs) if i > 0))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor.

    Raises:
        ZeroPolynomialError: if both inputs are zero.
    """
    if p.is_zero and q.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, (a % b).primitive()
    return a.monic()


def square_free_part(p: Poly) -> Poly:
    """Monic ``p / gcd(p, p')``: same roots as ``p``, all simple."""
    if p.is_zero:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    g = poly_gcd(p, pderiv(p))
    return (p // g).monic()


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound ``1 + max |a_i| / |a_n|``; all real roots lie in ``(-B, B)``.

    Raises:
        DegreeError: if ``p`` is zero or constant.
    """
    if p.degree < 1:
        raise DegreeError("root bound needs a polynomial of degree >= 1")
    lc = abs(p.lcoef)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1])
