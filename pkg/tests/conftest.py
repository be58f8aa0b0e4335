"""Pytest configuration and shared fixtures.

Ensures the repository root is importable (so tests can import packages like
`cli`, `core`, `tools` without an editable install), and provides the formulas
and polynomials that many tests share.
"""

from __future__ import annotations

import random
import sys
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path

import pytest

# Make repo root importable for tests (avoid requiring `pip install -e .`).
_REPO_ROOT = Path(__file__).resolve().parent.parent
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from tools.formula import And, Atom, Node, Not, Or, Rel  # noqa: E402
from tools.poly import Poly  # noqa: E402

# Formulas from the worked examples of the decision procedure.
INTRO_FORMULA = "forall x. (x^2 > 2 /\\ x^10 - 2*x^5 + 1 >= 0) \\/ x < 2"
INTRO_CERT = "[Arep [:-2, 0, 1:] (-2) (-1/3), Rat 1, Arep [:-2, 0, 1:] (7/6) (19/12), Rat 2]"
EXISTS_FORMULA = "exists x. x*x = 2 /\\ x*x*x > 2.5"
EXISTS_CERT = "[Arep [:-2,0,1:] 0 2]"
UNIV_FORMULA = "forall x. x^2 - 2 > 0 \\/ x < 2"
UNIV_CERT = "[Arep [:-2, 0, 1:] (-2) (-1/3), Arep [:-2, 0, 1:] (7/6) (19/12), Rat 2]"

X = Poly.x()
SQRT2_POLY = X * X - 2


@pytest.fixture
def rng() -> random.Random:
    """Deterministic random source for property loops."""
    return random.Random(20240611)


def random_poly(rng: random.Random, max_deg: int, lo: int = -10, hi: int = 10) -> Poly:
    """Random nonzero integer polynomial of degree at most ``max_deg``."""
    while True:
        deg = rng.randint(0, max_deg)
        p = Poly(tuple(Fraction(rng.randint(lo, hi)) for _ in range(deg + 1)))
        if not p.is_zero:
            return p


def random_rational(rng: random.Random, bound: int = 6, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def random_nonroot(rng: random.Random, p: Poly, **kw: int) -> Fraction:
    while True:
        r = random_rational(rng, **kw)
        if p(r) != 0:
            return r


@pytest.fixture
def make_poly() -> Callable[..., Poly]:
    """Polynomial from ascending coefficients: ``make_poly(-2, 0, 1)`` is ``x^2 - 2``."""

    def _make(*coeffs: int | Fraction) -> Poly:
        return Poly(tuple(Fraction(c) for c in coeffs))

    return _make


def random_body(rng: random.Random, atoms: int = 3, max_deg: int = 5) -> Node:
    """Random quantifier-free body with ``atoms`` polynomial atoms."""
    if atoms <= 1:
        node: Node = Atom(random_poly(rng, max_deg, -5, 5), rng.choice(list(Rel)))
    else:
        k = rng.randint(1, atoms - 1)
        left = random_body(rng, k, max_deg)
        right = random_body(rng, atoms - k, max_deg)
        node = And(left, right) if rng.random() < 0.5 else Or(left, right)
    if rng.random() < 0.2:
        node = Not(node)
    return node
