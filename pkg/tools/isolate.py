"""Native real root isolation by Sturm-guided bisection.

This is the search side of the decision procedure: it produces candidate
root lists that the checker then verifies independently. Isolation runs on
the square-free part; rational roots are always reported exactly as
``RatPoint`` values.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from itertools import count

import structlog

from core.errors import DegreeError, ZeroPolynomialError
from tools.poly import Poly, poly_eval, root_bound, square_free_part
from tools.realalg import AlgRep, Ordering, RatPoint, RealAlg, by_value, compare_trusted
from tools.sturm import ExtRat, SturmCounter

logger = structlog.get_logger(__name__)


def _split_point(p: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    # p has finitely many roots, so some k/d of the interval is not one of them.
    for d in count(2):
        for k in range(1, d):
            c = lo + (hi - lo) * k / d
            if poly_eval(p, c) != 0:
                return c
    raise AssertionError("unreachable")  # pragma: no cover


def _settle(p: Poly, lead: int, lo: Fraction, hi: Fraction) -> RealAlg:
    """Pin down the single root of ``p`` in ``(lo, hi)``.

    Every rational root ``r`` of the primitive integer form of ``p`` satisfies
    ``lead * r`` integral, so once the interval is narrower than ``1 / lead``
    only one candidate needs testing.
    """
    while (hi - lo) * lead >= 1:
        c = (lo + hi) / 2
        pc = poly_eval(p, c)
        if pc == 0:
            return RatPoint(c)
        if poly_eval(p, lo) * pc < 0:
            hi = c
        else:
            lo = c
    m = math.floor(lo * lead) + 1
    cand = Fraction(m, lead)
    if cand < hi and poly_eval(p, cand) == 0:
        return RatPoint(cand)
    return AlgRep(p, lo, hi)


def isolate_roots(p: Poly) -> list[RealAlg]:
    """All distinct real roots of ``p`` in strictly increasing order.

    Raises:
        ZeroPolynomialError: if ``p`` is zero.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot isolate the roots of the zero polynomial")
    if p.degree < 1:
        return []
    sf = square_free_part(p)
    if sf.degree == 1:
        return [RatPoint(-sf.coeffs[0] / sf.coeffs[1])]

    lead = int(sf.primitive().lcoef)
    counter = SturmCounter.of(sf)
    bound = root_bound(sf)
    while poly_eval(sf, bound) == 0 or poly_eval(sf, -bound) == 0:
        bound += 1

    roots: list[RealAlg] = []
    # Depth-first, left half first, so roots come out in ascending order.
    stack: list[tuple[Fraction, Fraction]] = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = counter.count(ExtRat.fin(lo), ExtRat.fin(hi))
        if n == 0:
            continue
        if n == 1:
            roots.append(_settle(sf, lead, lo, hi))
            continue
        c = _split_point(sf, lo, hi)
        stack.append((c, hi))
        stack.append((lo, c))
    logger.debug("roots_isolated", poly=str(p), count=len(roots))
    return roots


def dedupe_sorted(points: Iterable[RealAlg]) -> list[RealAlg]:
    """Sort by value and drop duplicates, preferring rational encodings."""
    out: list[RealAlg] = []
    for a in sorted(points, key=by_value):
        if out and compare_trusted(out[-1], a) == Ordering.EQUAL:
            if isinstance(a, RatPoint):
                out[-1] = a
            continue
        out.append(a)
    return out


def isolate_all(ps: Sequence[Poly]) -> list[RealAlg]:
    """Sorted, deduplicated union of the real roots of every polynomial in ``ps``.

    Raises:
        ZeroPolynomialError: if a member is zero.
        DegreeError: if a member is constant.
    """
    collected: list[RealAlg] = []
    for p in ps:
        if p.is_zero:
            raise ZeroPolynomialError("isolate_all got the zero polynomial")
        if p.degree < 1:
            raise DegreeError(f"isolate_all got a constant polynomial: {p}")
        collected.extend(isolate_roots(p))
    return dedupe_sorted(collected)
