"""Real algebraic numbers as (polynomial, isolating interval) pairs.

A number is either an exact ``RatPoint`` or an ``AlgRep(ipoly, lb, ub)``
denoting the unique root of ``ipoly`` in the open interval ``(lb, ub)``.
Signs of polynomials at such points are decided exactly with a Tarski
query over the isolating interval; no floating point is involved.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from core.errors import InvalidAlgebraicError
from tools.poly import (
    Poly,
    RationalLike,
    Sign,
    format_rational,
    pderiv,
    poly_eval,
    poly_gcd,
    sign_of,
)
from tools.sturm import ExtRat, changes_itv_smods, count_roots


@dataclass(frozen=True)
class RatPoint:
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self) -> str:
        return f"Rat {format_rational(self.value)}"


@dataclass(frozen=True)
class AlgRep:
    ipoly: Poly
    lb: Fraction
    ub: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lb", Fraction(self.lb))
        object.__setattr__(self, "ub", Fraction(self.ub))

    @property
    def width(self) -> Fraction:
        return self.ub - self.lb

    def __str__(self) -> str:
        return (
            f"Arep {self.ipoly.to_coeff_list()} "
            f"({format_rational(self.lb)}) ({format_rational(self.ub)})"
        )


RealAlg = RatPoint | AlgRep


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# -----------------------------
# Validity and refinement
# -----------------------------


@lru_cache(maxsize=8192)
def valid_alg(p: Poly, lb: Fraction, ub: Fraction) -> bool:
    """True iff ``p(lb) p(ub) < 0`` and ``p`` has exactly one root in ``(lb, ub)``."""
    lb, ub = Fraction(lb), Fraction(ub)
    if p.is_zero or lb >= ub:
        return False
    if poly_eval(p, lb) * poly_eval(p, ub) >= 0:
        return False
    return count_roots(p, ExtRat.fin(lb), ExtRat.fin(ub)) == 1


def is_well_formed(a: RealAlg) -> bool:
    if isinstance(a, RatPoint):
        return True
    return valid_alg(a.ipoly, a.lb, a.ub)


def _require_valid(a: RealAlg) -> None:
    if not is_well_formed(a):
        raise InvalidAlgebraicError(f"not an isolating representation: {a}")


def _bisect(a: AlgRep) -> RealAlg:
    # Callers guarantee validity; an exact hit at the midpoint collapses to a rational.
    c = (a.lb + a.ub) / 2
    pc = poly_eval(a.ipoly, c)
    if pc == 0:
        return RatPoint(c)
    if poly_eval(a.ipoly, a.lb) * pc < 0:
        return AlgRep(a.ipoly, a.lb, c)
    return AlgRep(a.ipoly, c, a.ub)


def refine(a: RealAlg) -> RealAlg:
    """Halve the isolating interval of ``a``; rationals are returned unchanged.

    Raises:
        InvalidAlgebraicError: if ``a`` is not a valid representation.
    """
    if isinstance(a, RatPoint):
        return a
    _require_valid(a)
    return _bisect(a)


def approx(a: RealAlg, eps: RationalLike) -> Fraction:
    """A rational within ``eps`` of the denoted number."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if isinstance(a, RatPoint):
        return a.value
    _require_valid(a)
    cur: RealAlg = a
    while isinstance(cur, AlgRep) and cur.width >= eps:
        cur = _bisect(cur)
    if isinstance(cur, RatPoint):
        return cur.value
    return (cur.lb + cur.ub) / 2


# -----------------------------
# Sign determination
# -----------------------------


def _sign_at_unchecked(q: Poly, a: RealAlg) -> Sign:
    if isinstance(a, RatPoint):
        return sign_of(poly_eval(q, a.value))
    p = a.ipoly
    # p vanishes at the root, so q and q mod p have the same sign there.
    q_red = q % p
    return Sign(changes_itv_smods(ExtRat.fin(a.lb), ExtRat.fin(a.ub), p, pderiv(p) * q_red))


def sign_at(q: Poly, a: RealAlg) -> Sign:
    """Exact sign of ``q`` at the real algebraic number ``a``.

    Raises:
        InvalidAlgebraicError: if ``a`` is not a valid representation.
    """
    _require_valid(a)
    return _sign_at_unchecked(q, a)


# -----------------------------
# Ordering
# -----------------------------


def _compare_alg_rat(a: AlgRep, r: Fraction) -> Ordering:
    if r <= a.lb:
        return Ordering.GREATER
    if r >= a.ub:
        return Ordering.LESS
    pr = poly_eval(a.ipoly, r)
    if pr == 0:
        return Ordering.EQUAL
    # Root lies in (lb, r) exactly when p changes sign there.
    if poly_eval(a.ipoly, a.lb) * pr < 0:
        return Ordering.LESS
    return Ordering.GREATER


def _same_root(a: AlgRep, b: AlgRep) -> bool:
    lo = max(a.lb, b.lb)
    hi = min(a.ub, b.ub)
    if lo >= hi:
        return False
    g = poly_gcd(a.ipoly, b.ipoly)
    if g.degree < 1:
        return False
    # Intersection endpoints are endpoints of a or b, hence never roots of g.
    return count_roots(g, ExtRat.fin(lo), ExtRat.fin(hi)) >= 1


def compare_trusted(a: RealAlg, b: RealAlg) -> Ordering:
    if isinstance(a, RatPoint) and isinstance(b, RatPoint):
        if a.value == b.value:
            return Ordering.EQUAL
        return Ordering.LESS if a.value < b.value else Ordering.GREATER
    if isinstance(a, AlgRep) and isinstance(b, RatPoint):
        return _compare_alg_rat(a, b.value)
    if isinstance(a, RatPoint) and isinstance(b, AlgRep):
        return Ordering(-_compare_alg_rat(b, a.value))
    assert isinstance(a, AlgRep) and isinstance(b, AlgRep)
    if a.ub <= b.lb:
        return Ordering.LESS
    if b.ub <= a.lb:
        return Ordering.GREATER
    if _same_root(a, b):
        return Ordering.EQUAL
    # Distinct roots: shrink both until the intervals separate.
    x: RealAlg = a
    y: RealAlg = b
    while isinstance(x, AlgRep) and isinstance(y, AlgRep):
        if x.ub <= y.lb:
            return Ordering.LESS
        if y.ub <= x.lb:
            return Ordering.GREATER
        x, y = _bisect(x), _bisect(y)
    return compare_trusted(x, y)


def compare(a: RealAlg, b: RealAlg) -> Ordering:
    """Order of the denoted real numbers.

    Raises:
        InvalidAlgebraicError: if either representation is invalid.
    """
    _require_valid(a)
    _require_valid(b)
    return compare_trusted(a, b)


# Sort key ordering (already validated) real algebraic numbers by value.
by_value = cmp_to_key(lambda x, y: int(compare_trusted(x, y)))


def _upper(a: RealAlg) -> Fraction:
    return a.value if isinstance(a, RatPoint) else a.ub


def _lower(a: RealAlg) -> Fraction:
    return a.value if isinstance(a, RatPoint) else a.lb


def mid_between(a: RealAlg, b: RealAlg) -> Fraction:
    """A rational strictly between ``a`` and ``b``.

    Raises:
        ValueError: unless ``a < b``.
    """
    if compare(a, b) != Ordering.LESS:
        raise ValueError(f"mid_between needs a < b: {a}, {b}")
    while True:
        hi_a, lo_b = _upper(a), _lower(b)
        if hi_a < lo_b:
            return (hi_a + lo_b) / 2
        if hi_a == lo_b and isinstance(a, AlgRep) and isinstance(b, AlgRep):
            return hi_a
        if isinstance(a, AlgRep) and (isinstance(b, RatPoint) or a.width >= b.width):
            a = _bisect(a)
        else:
            assert isinstance(b, AlgRep)
            b = _bisect(b)


def below(a: RealAlg) -> Fraction:
    """A rational strictly below ``a``."""
    return _lower(a) - 1


def above(a: RealAlg) -> Fraction:
    """A rational strictly above ``a``."""
    return _upper(a) + 1


def sample_points(points: Sequence[RealAlg]) -> list[RealAlg]:
    """Points of a sorted, distinct list interleaved with one rational per open gap.

    The result has ``2 n + 1`` entries in ascending order: a rational below the
    first point, each point followed by a rational up to the next one, and a
    rational above the last point. An empty list gives the single sample ``0``.
    """
    if not points:
        return [RatPoint(Fraction(0))]
    out: list[RealAlg] = [RatPoint(below(points[0]))]
    for a, b in zip(points, points[1:]):
        out.append(a)
        out.append(RatPoint(mid_between(a, b)))
    out.append(points[-1])
    out.append(RatPoint(above(points[-1])))
    return out
