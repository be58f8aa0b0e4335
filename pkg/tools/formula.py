"""Formula AST and sign-condition normal form.

A ``Formula`` is a single quantifier over one real variable and a
quantifier-free body built from polynomial atoms ``p(x) rel 0`` with
``And``/``Or``/``Not``. ``to_sign_conditions`` turns a body into a
negation-free tree whose atoms are ``(poly, allowed signs)`` pairs, which is
the only shape the checker evaluates.
"""

from __future__ import annotations

import operator
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

from tools.poly import Poly, RationalLike, Sign, poly_eval, sign_of
from tools.realalg import RealAlg, sign_at

ALL_SIGNS: frozenset[Sign] = frozenset(Sign)


class Rel(str, Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    NE = "!="
    GE = ">="
    GT = ">"

    @property
    def signs(self) -> frozenset[Sign]:
        """Signs of ``p(x)`` for which ``p(x) rel 0`` holds."""
        return _REL_SIGNS[self]

    def holds(self, value: RationalLike) -> bool:
        return _REL_OPS[self](value, 0)


_REL_SIGNS: dict[Rel, frozenset[Sign]] = {
    Rel.LT: frozenset({Sign.NEG}),
    Rel.LE: frozenset({Sign.NEG, Sign.ZERO}),
    Rel.EQ: frozenset({Sign.ZERO}),
    Rel.NE: frozenset({Sign.NEG, Sign.POS}),
    Rel.GE: frozenset({Sign.ZERO, Sign.POS}),
    Rel.GT: frozenset({Sign.POS}),
}

_REL_OPS: dict[Rel, Callable[[RationalLike, int], bool]] = {
    Rel.LT: operator.lt,
    Rel.LE: operator.le,
    Rel.EQ: operator.eq,
    Rel.NE: operator.ne,
    Rel.GE: operator.ge,
    Rel.GT: operator.gt,
}


class Quantifier(str, Enum):
    EXISTS = "exists"
    FORALL = "forall"

    @property
    def dual(self) -> Quantifier:
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS


# -----------------------------
# Tree nodes
# -----------------------------


@dataclass(frozen=True)
class TrueNode:
    pass


@dataclass(frozen=True)
class FalseNode:
    pass


@dataclass(frozen=True)
class Atom:
    """``poly(x) rel 0``."""

    poly: Poly
    rel: Rel


@dataclass(frozen=True)
class SignAtom:
    """``sgn(poly(x)) in allowed``; ``allowed`` is nonempty and proper."""

    poly: Poly
    allowed: frozenset[Sign]


@dataclass(frozen=True)
class Not:
    arg: Node


@dataclass(frozen=True)
class And:
    left: Node
    right: Node


@dataclass(frozen=True)
class Or:
    left: Node
    right: Node


Node = TrueNode | FalseNode | Atom | SignAtom | Not | And | Or
# Quantifier-free bodies use Atom and Not; sign-condition trees use SignAtom only.
QFFormula = Node
SignCondFormula = Node


@dataclass(frozen=True)
class Formula:
    quantifier: Quantifier
    body: QFFormula
    var: str = "x"

    @cached_property
    def sign_body(self) -> SignCondFormula:
        return to_sign_conditions(self.body)

    def negated(self) -> Formula:
        """The dual quantifier over ``Not(body)``; true exactly when ``self`` is false."""
        return Formula(self.quantifier.dual, Not(self.body), self.var)


# -----------------------------
# Normal form
# -----------------------------


def _const(flag: bool) -> Node:
    return TrueNode() if flag else FalseNode()


def _and(a: Node, b: Node) -> Node:
    if isinstance(a, FalseNode) or isinstance(b, FalseNode):
        return FalseNode()
    if isinstance(a, TrueNode):
        return b
    if isinstance(b, TrueNode):
        return a
    return And(a, b)


def _or(a: Node, b: Node) -> Node:
    if isinstance(a, TrueNode) or isinstance(b, TrueNode):
        return TrueNode()
    if isinstance(a, FalseNode):
        return b
    if isinstance(b, FalseNode):
        return a
    return Or(a, b)


def _sign_atom(poly: Poly, allowed: frozenset[Sign], negate: bool) -> Node:
    if negate:
        allowed = ALL_SIGNS - allowed
    if poly.is_constant:
        return _const(sign_of(poly_eval(poly, Fraction(0))) in allowed)
    if not allowed:
        return FalseNode()
    if allowed == ALL_SIGNS:
        return TrueNode()
    return SignAtom(poly, allowed)


def to_sign_conditions(f: QFFormula, negate: bool = False) -> SignCondFormula:
    """Negation-free sign-condition form of ``f`` (of ``Not(f)`` when ``negate``).

    ``Not`` is pushed to the atoms by complementing their sign sets, and
    constant atoms are folded to ``TrueNode``/``FalseNode``.
    """
    if isinstance(f, TrueNode):
        return _const(not negate)
    if isinstance(f, FalseNode):
        return _const(negate)
    if isinstance(f, Atom):
        return _sign_atom(f.poly, f.rel.signs, negate)
    if isinstance(f, SignAtom):
        return _sign_atom(f.poly, f.allowed, negate)
    if isinstance(f, Not):
        return to_sign_conditions(f.arg, not negate)
    left = to_sign_conditions(f.left, negate)
    right = to_sign_conditions(f.right, negate)
    # De Morgan: under negation the connective flips.
    if isinstance(f, And) != negate:
        return _and(left, right)
    return _or(left, right)


# -----------------------------
# Evaluation
# -----------------------------


def eval_qf_at(
    f: SignCondFormula, a: RealAlg, cache: dict[Poly, Sign] | None = None
) -> bool:
    """Truth of a sign-condition tree at ``a``; each polynomial's sign is computed once.

    Raises:
        InvalidAlgebraicError: if ``a`` is not a valid representation.
    """
    signs = cache if cache is not None else {}

    def go(node: Node) -> bool:
        if isinstance(node, TrueNode):
            return True
        if isinstance(node, FalseNode):
            return False
        if isinstance(node, SignAtom):
            s = signs.get(node.poly)
            if s is None:
                s = signs[node.poly] = sign_at(node.poly, a)
            return s in node.allowed
        if isinstance(node, And):
            return go(node.left) and go(node.right)
        if isinstance(node, Or):
            return go(node.left) or go(node.right)
        raise TypeError(f"not a sign-condition node: {node!r}")

    return go(f)


def holds_at(f: QFFormula, x: RationalLike) -> bool:
    """Direct relational evaluation of a quantifier-free body at a rational."""
    v = Fraction(x)
    if isinstance(f, TrueNode):
        return True
    if isinstance(f, FalseNode):
        return False
    if isinstance(f, Atom):
        return f.rel.holds(poly_eval(f.poly, v))
    if isinstance(f, SignAtom):
        return sign_of(poly_eval(f.poly, v)) in f.allowed
    if isinstance(f, Not):
        return not holds_at(f.arg, v)
    if isinstance(f, And):
        return holds_at(f.left, v) and holds_at(f.right, v)
    return holds_at(f.left, v) or holds_at(f.right, v)


def iter_atoms(f: Node) -> Iterator[Atom | SignAtom]:
    if isinstance(f, Atom | SignAtom):
        yield f
    elif isinstance(f, Not):
        yield from iter_atoms(f.arg)
    elif isinstance(f, And | Or):
        yield from iter_atoms(f.left)
        yield from iter_atoms(f.right)


def collect_polys(f: Node) -> list[Poly]:
    """Distinct nonconstant atom polynomials in order of first appearance."""
    seen: dict[Poly, None] = {}
    for atom in iter_atoms(f):
        if not atom.poly.is_constant:
            seen.setdefault(atom.poly, None)
    return list(seen)
