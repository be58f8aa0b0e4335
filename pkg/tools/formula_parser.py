"""Text syntax for formulas and polynomials, built on pyparsing.

Grammar (whitespace-insensitive)::

    formula := ("forall" | "exists" | "∀" | "∃") ident "." body
    body    := atoms, "true" and "false" combined with "~" (¬), then
               "/\\" (∧, &), then "\\/" (∨, |), tightest first; parentheses group
    atom    := expr rel expr
    rel     := "<" | "<=" | "=" | "!=" | ">=" | ">"   (also ≤ ≥ ≠)

Expressions are polynomial arithmetic over the bound variable with integer
or decimal literals (decimals are exact), ``^`` then unary ``+ -`` then
``* /`` then ``+ -``, division by nonzero constants, parentheses and
ascending coefficient lists such as ``[:-2, 0, 1:]``. ``format_formula``
prints a formula so that parsing it gives it back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any

import pyparsing as pp

from core.errors import FormulaSyntaxError
from tools.formula import (
    And,
    Atom,
    FalseNode,
    Formula,
    Node,
    Not,
    Or,
    Quantifier,
    Rel,
    SignAtom,
    TrueNode,
)
from tools.poly import Poly

pp.ParserElement.enable_packrat()

_KEYWORDS = ("forall", "exists", "true", "false")
_IDENT = rf"(?!(?:{'|'.join(_KEYWORDS)})\b)[A-Za-z_][A-Za-z0-9_]*"

_RELS = {
    "<": Rel.LT,
    "<=": Rel.LE,
    "≤": Rel.LE,
    "=": Rel.EQ,
    "!=": Rel.NE,
    "≠": Rel.NE,
    ">=": Rel.GE,
    "≥": Rel.GE,
    ">": Rel.GT,
}
_QUANTIFIERS = {
    "forall": Quantifier.FORALL,
    "∀": Quantifier.FORALL,
    "exists": Quantifier.EXISTS,
    "∃": Quantifier.EXISTS,
}


@dataclass(frozen=True)
class _Op:
    """An arithmetic operator and the offset it starts at."""

    text: str
    loc: int


def _op(expr: pp.ParserElement) -> pp.ParserElement:
    return expr.set_parse_action(lambda s, loc, toks: _Op(toks[0], loc))


def _token_start(s: str, loc: int) -> int:
    return loc + len(s[loc:]) - len(s[loc:].lstrip())


def _pairs(items: list[Any]) -> zip[tuple[Any, Any]]:
    return zip(items[1::2], items[2::2])


# -----------------------------
# Parse actions
# -----------------------------


def _coeff_list(s: str, loc: int, toks: pp.ParseResults) -> Poly:
    coeffs: list[Fraction] = []
    for c in toks:
        if not c.is_constant:
            raise pp.ParseFatalException(s, loc, "coefficient must be a constant")
        coeffs.append(c.lcoef)
    return Poly(tuple(coeffs))


def _power(s: str, loc: int, toks: pp.ParseResults) -> Poly:
    items = list(toks[0])
    result: Poly = items[0]
    for op, exponent in _pairs(items):
        k = exponent.lcoef
        if not exponent.is_constant or k.denominator != 1 or k < 0:
            raise pp.ParseFatalException(
                s, _token_start(s, op.loc + 1), "exponent must be a nonnegative integer"
            )
        result = result ** int(k)
    return result


def _signed(toks: pp.ParseResults) -> Poly:
    op, operand = toks[0]
    return -operand if op.text == "-" else operand


def _product(s: str, loc: int, toks: pp.ParseResults) -> Poly:
    items = list(toks[0])
    result: Poly = items[0]
    for op, rhs in _pairs(items):
        if op.text == "*":
            result = result * rhs
        elif rhs.is_constant and not rhs.is_zero:
            result = result * (1 / rhs.lcoef)
        else:
            raise pp.ParseFatalException(s, op.loc, "division only by nonzero constants")
    return result


def _sum(toks: pp.ParseResults) -> Poly:
    items = list(toks[0])
    result: Poly = items[0]
    for op, rhs in _pairs(items):
        result = result + rhs if op.text == "+" else result - rhs
    return result


# -----------------------------
# Grammar
# -----------------------------

_number = pp.Regex(r"\d+(?:\.\d+)?").set_name("number")
_number.set_parse_action(lambda toks: Poly.const(Fraction(toks[0])))
_var_ref = pp.Regex(_IDENT).set_name("variable")
_var_ref.set_parse_action(lambda: Poly.x())

_expr = pp.Forward().set_name("polynomial")
_coeffs = (
    pp.Suppress("[:")
    + pp.Opt(_expr + pp.ZeroOrMore(pp.Suppress(",") + _expr))
    + pp.Suppress(":]")
).set_name("coefficient list")
_coeffs.set_parse_action(_coeff_list)

_expr <<= pp.infix_notation(
    _number | _var_ref | _coeffs,
    [
        (_op(pp.Literal("^")), 2, pp.OpAssoc.LEFT, _power),
        (_op(pp.one_of("+ -")), 1, pp.OpAssoc.RIGHT, _signed),
        # "/" but not the start of "/\"
        (_op(pp.Literal("*") | pp.Regex(r"/(?!\\)")), 2, pp.OpAssoc.LEFT, _product),
        (_op(pp.one_of("+ -")), 2, pp.OpAssoc.LEFT, _sum),
    ],
)

_rel = pp.one_of(list(_RELS)).set_name("relation")
_rel.set_parse_action(lambda toks: _RELS[toks[0]])
_atom = (_expr + _rel + _expr).set_name("atom")
_atom.set_parse_action(lambda toks: Atom(toks[0] - toks[2], toks[1]))

_true = pp.Keyword("true").set_parse_action(lambda: TrueNode())
_false = pp.Keyword("false").set_parse_action(lambda: FalseNode())

_not_op = pp.Suppress(pp.one_of("~ ¬"))
_and_op = pp.Suppress(pp.one_of("/\\ ∧ &"))
_or_op = pp.Suppress(pp.one_of("\\/ ∨ |"))

_body = pp.infix_notation(
    _true | _false | _atom,
    [
        (_not_op, 1, pp.OpAssoc.RIGHT, lambda toks: Not(toks[0][0])),
        (_and_op, 2, pp.OpAssoc.LEFT, lambda toks: reduce(And, toks[0])),
        (_or_op, 2, pp.OpAssoc.LEFT, lambda toks: reduce(Or, toks[0])),
    ],
).set_name("formula body")

_quantifier = (
    pp.Keyword("forall") | pp.Keyword("exists") | pp.Literal("∀") | pp.Literal("∃")
).set_name("'forall' or 'exists'")
_quantifier.set_parse_action(lambda toks: _QUANTIFIERS[toks[0]])
_bound = pp.Regex(_IDENT).set_name("a variable name")

_formula = _quantifier - _bound - pp.Suppress(".") - _body
_formula.set_parse_action(lambda toks: Formula(toks[0], toks[2], toks[1]))

# Identifiers as whole words, for the single-variable check.
_name_scan = pp.Regex(rf"(?<![A-Za-z0-9_]){_IDENT}")


def _check_single_variable(text: str) -> None:
    first: str | None = None
    for toks, start, _end in _name_scan.scan_string(text):
        name = toks[0]
        if first is None:
            first = name
        elif name != first:
            raise FormulaSyntaxError(
                f"only one variable is allowed; found {name!r} besides {first!r}", start
            )


def _parse(element: pp.ParserElement, text: str) -> Any:
    try:
        result = element.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise FormulaSyntaxError(exc.msg, exc.loc) from None
    _check_single_variable(text)
    return result


def parse_formula(text: str) -> Formula:
    """Parse a quantified formula.

    Raises:
        FormulaSyntaxError: on bad syntax, a second variable or a bad literal.
    """
    f: Formula = _parse(_formula, text)
    return f


def parse_poly(text: str) -> Poly:
    """Parse a bare polynomial in expression or coefficient-list form."""
    p: Poly = _parse(_expr, text)
    return p


# -----------------------------
# Printing
# -----------------------------

_PREC_OR, _PREC_AND, _PREC_NOT = 1, 2, 3

_ALLOWED_RELS = {rel.signs: rel for rel in Rel}


def _fmt(node: Node, var: str, prec: int) -> str:
    if isinstance(node, TrueNode):
        return "true"
    if isinstance(node, FalseNode):
        return "false"
    if isinstance(node, Atom):
        return f"{node.poly.to_str(var)} {node.rel.value} 0"
    if isinstance(node, SignAtom):
        return _fmt(Atom(node.poly, _ALLOWED_RELS[node.allowed]), var, prec)
    if isinstance(node, Not):
        return "~" + _fmt(node.arg, var, _PREC_NOT)
    if isinstance(node, And):
        text = f"{_fmt(node.left, var, _PREC_AND)} /\\ {_fmt(node.right, var, _PREC_AND + 1)}"
        return f"({text})" if prec > _PREC_AND else text
    text = f"{_fmt(node.left, var, _PREC_OR)} \\/ {_fmt(node.right, var, _PREC_OR + 1)}"
    return f"({text})" if prec > _PREC_OR else text


def format_body(node: Node, var: str = "x") -> str:
    return _fmt(node, var, _PREC_OR)


def format_formula(f: Formula) -> str:
    """Canonical ASCII text; ``parse_formula(format_formula(f)) == f``."""
    return f"{f.quantifier.value} {f.var}. {format_body(f.body, f.var)}"
