"""Signed remainder sequences, sign variations and Tarski queries.

``taq(q, p, a, b)`` computes the sum of ``sgn q(x)`` over the distinct roots
``x`` of ``p`` in the open interval ``(a, b)`` as a difference of sign
variations of the signed remainder sequence of ``p`` and ``p' * q``.
Endpoints are extended rationals, so unbounded intervals are handled through
leading coefficients and degree parity instead of large finite surrogates.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import total_ordering

from core.errors import EndpointError, ZeroPolynomialError
from tools.poly import Poly, RationalLike, Sign, pderiv, poly_eval, sign_of


class ExtKind(IntEnum):
    NEG_INF = -1
    FIN = 0
    POS_INF = 1


@total_ordering
@dataclass(frozen=True)
class ExtRat:
    """Extended rational endpoint: ``-inf``, a finite rational, or ``+inf``."""

    kind: ExtKind
    value: Fraction | None = None

    def __post_init__(self) -> None:
        if (self.kind == ExtKind.FIN) != (self.value is not None):
            raise ValueError("finite endpoints carry a value; infinite ones do not")

    @classmethod
    def fin(cls, value: RationalLike) -> ExtRat:
        return cls(ExtKind.FIN, Fraction(value))

    @property
    def is_finite(self) -> bool:
        return self.kind == ExtKind.FIN

    def _key(self) -> tuple[int, Fraction]:
        return (int(self.kind), self.value if self.value is not None else Fraction(0))

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ExtRat):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self) -> str:
        if self.kind == ExtKind.NEG_INF:
            return "-inf"
        if self.kind == ExtKind.POS_INF:
            return "+inf"
        return str(self.value)


NEG_INF = ExtRat(ExtKind.NEG_INF)
POS_INF = ExtRat(ExtKind.POS_INF)

PolySeq = tuple[Poly, ...]


def sign_ext(p: Poly, e: ExtRat) -> Sign:
    """Sign of ``p`` at an extended-rational point."""
    if p.is_zero:
        return Sign.ZERO
    if e.kind == ExtKind.FIN:
        assert e.value is not None
        return sign_of(poly_eval(p, e.value))
    s = sign_of(p.lcoef)
    if e.kind == ExtKind.NEG_INF and p.degree % 2 == 1:
        return Sign(-s)
    return s


def srems(p: Poly, q: Poly) -> PolySeq:
    """Signed remainder sequence of ``p`` and ``q``.

    Remainders (from the third element on) are rescaled by positive rationals
    to coprime integer coefficients; sign variations are invariant under such
    scaling.

    Raises:
        ZeroPolynomialError: if ``p`` is zero.
    """
    if p.is_zero:
        raise ZeroPolynomialError("signed remainder sequence of the zero polynomial")
    if q.is_zero:
        return (p,)
    seq = [p, q]
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero:
            break
        seq.append(r.primitive())
    return tuple(seq)


def _variations_of_signs(signs: Sequence[Sign]) -> int:
    # Case order: product -1, then (product +1 or head zero), then second zero.
    count = 0
    work = list(signs)
    while len(work) > 1:
        s0, s1 = work[0], work[1]
        if s0 * s1 == -1:
            count += 1
            work.pop(0)
        elif s0 * s1 == 1 or s0 == 0:
            work.pop(0)
        else:
            work.pop(1)
    return count


def variations(s: Sequence[Poly], e: ExtRat) -> int:
    """Number of sign variations of the sequence evaluated at ``e``."""
    return _variations_of_signs([sign_ext(p, e) for p in s])


def changes_itv_smods(a: ExtRat, b: ExtRat, p: Poly, q: Poly) -> int:
    """``Var(srems(p, q); a) - Var(srems(p, q); b)``."""
    seq = srems(p, q)
    return variations(seq, a) - variations(seq, b)


def cross(p: Poly, a: RationalLike, b: RationalLike) -> Sign:
    """0 when ``p(a)p(b) >= 0``; otherwise +1 if ``p(a) < p(b)`` else -1."""
    pa = poly_eval(p, Fraction(a))
    pb = poly_eval(p, Fraction(b))
    if pa * pb >= 0:
        return Sign.ZERO
    return Sign.POS if pa < pb else Sign.NEG


def _check_endpoints(p: Poly, a: ExtRat, b: ExtRat) -> None:
    if p.is_zero:
        raise ZeroPolynomialError("Tarski query over the zero polynomial")
    if not a < b:
        raise EndpointError(f"endpoints out of order: {a} >= {b}")
    for e in (a, b):
        if e.is_finite and sign_ext(p, e) == Sign.ZERO:
            raise EndpointError(f"endpoint {e} is a root of {p}")


def taq(q: Poly, p: Poly, a: ExtRat, b: ExtRat) -> int:
    """Tarski query: sum of ``sgn q(x)`` over roots ``x`` of ``p`` in ``(a, b)``.

    Raises:
        ZeroPolynomialError: if ``p`` is zero.
        EndpointError: if ``a >= b`` or a finite endpoint is a root of ``p``.
    """
    _check_endpoints(p, a, b)
    return changes_itv_smods(a, b, p, pderiv(p) * q)


def count_roots(p: Poly, a: ExtRat, b: ExtRat) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b)``."""
    return taq(Poly.const(1), p, a, b)


@dataclass(frozen=True)
class SturmCounter:
    """Sturm sequence of ``p`` built once and reused for many root counts.

    Callers guarantee the endpoint preconditions of ``count_roots``.
    """

    p: Poly
    seq: PolySeq

    @classmethod
    def of(cls, p: Poly) -> SturmCounter:
        return cls(p=p, seq=srems(p, pderiv(p)))

    def count(self, a: ExtRat, b: ExtRat) -> int:
        return variations(self.seq, a) - variations(self.seq, b)
