"""Decision certificates and their text formats.

Two syntaxes are understood:

- the compact list form ``[Arep [:-2, 0, 1:] (-2) (-1/3), Rat 1, Rat 2]``,
  whose kind is implied by the formula it is checked against;
- JSON, ``{"kind": "universal", "points": [{"type": "rat", "value": "2"}, ...]}``.

Certificates are always written as JSON, atomically and with sorted keys.
"""

from __future__ import annotations

import json
import os
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, ClassVar

import pyparsing as pp
from pydantic import ValidationError

from core.errors import CertificateFormatError
from schemas.certificate import AlgRepModel, CertificateModel, PointModel, RatPointModel
from tools.formula import Quantifier
from tools.poly import Poly, format_rational
from tools.realalg import AlgRep, RatPoint, RealAlg


@dataclass(frozen=True)
class ExistCert:
    witness: RealAlg
    kind: ClassVar[str] = "existential"

    @property
    def points(self) -> tuple[RealAlg, ...]:
        return (self.witness,)


@dataclass(frozen=True)
class UnivCert:
    points: tuple[RealAlg, ...]
    kind: ClassVar[str] = "universal"


Certificate = ExistCert | UnivCert


# -----------------------------
# Compact list syntax
# -----------------------------


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``n``, ``n/d``, a decimal, optionally parenthesized."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = "".join(s.split())
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(f"not an exact rational: {text!r}") from exc


_number = pp.Regex(r"-?\s*\d+(?:\.\d+)?(?:\s*/\s*\d+)?").set_name("rational")
_number.set_parse_action(lambda toks: parse_rational(toks[0]))
_rational = _number | pp.Suppress("(") + _number + pp.Suppress(")")
_coeff_list = pp.Group(
    pp.Suppress("[:")
    + pp.Opt(_rational + pp.ZeroOrMore(pp.Suppress(",") + _rational))
    + pp.Suppress(":]")
)

_rat_point = pp.Suppress("Rat") + _rational
_rat_point.set_parse_action(lambda toks: RatPoint(toks[0]))
_arep = pp.Suppress("Arep") + _coeff_list + _rational + _rational
_arep.set_parse_action(lambda toks: AlgRep(Poly(tuple(toks[0])), toks[1], toks[2]))

_entry = (_rat_point | _arep).set_name("certificate entry")
_entry_list = (
    pp.Suppress("[") + pp.Opt(_entry + pp.ZeroOrMore(pp.Suppress(",") + _entry)) + pp.Suppress("]")
).set_name("certificate list")


def _parse_points(element: pp.ParserElement, text: str) -> list[RealAlg]:
    try:
        return list(element.parse_string(text, parse_all=True))
    except pp.ParseBaseException as exc:
        raise CertificateFormatError(
            f"bad {element.name} at offset {exc.loc}: {exc.msg}"
        ) from None


def parse_point(text: str) -> RealAlg:
    """One entry: ``Rat q`` or ``Arep [:c0, ..., cn:] lb ub``.

    The entry is parsed, not validated; callers check isolation themselves.
    """
    (point,) = _parse_points(_entry, text)
    return point


def parse_compact_certificate(text: str) -> list[RealAlg]:
    """Parse the compact ``[entry, entry, ...]`` form."""
    return _parse_points(_entry_list, text)



def format_point(a: RealAlg) -> str:
    """Compact entry text, e.g. ``Arep [:-2, 0, 1:] (0) (2)`` or ``Rat 1``."""
    return str(a)


def format_certificate(cert: Certificate) -> str:
    return "[" + ", ".join(format_point(a) for a in cert.points) + "]"


# -----------------------------
# JSON codec
# -----------------------------


def point_to_model(a: RealAlg) -> RatPointModel | AlgRepModel:
    if isinstance(a, RatPoint):
        return RatPointModel(value=format_rational(a.value))
    return AlgRepModel(
        poly=[format_rational(c) for c in a.ipoly.coeffs],
        lb=format_rational(a.lb),
        ub=format_rational(a.ub),
    )


def point_from_model(m: PointModel) -> RealAlg:
    if isinstance(m, RatPointModel):
        return RatPoint(Fraction(m.value))
    return AlgRep(Poly(tuple(Fraction(c) for c in m.poly)), Fraction(m.lb), Fraction(m.ub))


def point_to_dict(a: RealAlg) -> dict[str, Any]:
    return point_to_model(a).model_dump(mode="json")


def certificate_to_model(cert: Certificate) -> CertificateModel:
    return CertificateModel(
        kind=cert.kind,  # type: ignore[arg-type]
        points=[point_to_model(a) for a in cert.points],
    )


def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    return certificate_to_model(cert).model_dump(mode="json")


def certificate_to_json(cert: Certificate, indent: int | None = None) -> str:
    """Deterministic JSON: sorted keys, exact rational strings."""
    return json.dumps(certificate_to_dict(cert), indent=indent, sort_keys=True)


def certificate_from_model(model: CertificateModel) -> Certificate:
    points = tuple(point_from_model(p) for p in model.points)
    if model.kind == "existential":
        if len(points) != 1:
            raise CertificateFormatError(
                f"an existential certificate has exactly one point, got {len(points)}"
            )
        return ExistCert(points[0])
    return UnivCert(points)


def certificate_from_dict(data: Mapping[str, Any]) -> Certificate:
    try:
        model = CertificateModel.model_validate(data)
    except ValidationError as exc:
        raise CertificateFormatError(f"invalid certificate data: {exc}") from exc
    return certificate_from_model(model)


def certificate_from_json(text: str) -> Certificate:
    try:
        model = CertificateModel.from_json(text)
    except ValidationError as exc:
        raise CertificateFormatError(f"invalid certificate JSON: {exc}") from exc
    return certificate_from_model(model)


def certificate_from_points(points: list[RealAlg], quantifier: Quantifier) -> Certificate:
    """Certificate of the kind a ``quantifier`` formula expects."""
    if quantifier is Quantifier.FORALL:
        return UnivCert(tuple(points))
    if len(points) != 1:
        raise CertificateFormatError(
            f"an existential certificate lists exactly one witness, got {len(points)}"
        )
    return ExistCert(points[0])


# -----------------------------
# Files
# -----------------------------


def load_certificate(path: Path, quantifier: Quantifier) -> Certificate:
    """Read a certificate in either syntax.

    The compact list form carries no kind, so ``quantifier`` decides it; JSON
    certificates keep their own kind.

    Raises:
        CertificateFormatError: if the file is unreadable or malformed.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CertificateFormatError(f"cannot read certificate {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        return certificate_from_json(text)
    return certificate_from_points(parse_compact_certificate(text), quantifier)


def _atomic_write_text(path: Path, data: str) -> None:
    """Write via a sibling ``.tmp`` file and ``os.replace``."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.parent.mkdir(parents=True, exist_ok=True)
    tmp.write_text(data, encoding="utf-8")
    os.replace(tmp, path)


def write_certificate(path: Path, cert: Certificate) -> Path:
    """Persist ``cert`` as JSON atomically and return the path written.

    Raises:
        CertificateFormatError: if the file cannot be written.
    """
    try:
        _atomic_write_text(Path(path), certificate_to_json(cert, indent=2) + "\n")
    except OSError as exc:
        raise CertificateFormatError(f"cannot write certificate {path}: {exc}") from exc
    return Path(path)


__all__ = [
    "Certificate",
    "ExistCert",
    "UnivCert",
    "certificate_from_json",
    "certificate_from_points",
    "certificate_to_dict",
    "certificate_to_json",
    "format_certificate",
    "format_point",
    "load_certificate",
    "parse_compact_certificate",
    "parse_point",
    "parse_rational",
    "point_to_dict",
    "write_certificate",
]
