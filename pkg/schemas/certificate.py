"""Certificate wire schemas and JSON helpers.

Rationals travel as exact strings (``"2"``, ``"-1/3"``, ``"2.5"``), never as
JSON numbers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Literal, TypeVar

from pydantic import BaseModel, Field, field_validator

T = TypeVar("T", bound="_JsonMixin")


class _JsonMixin(BaseModel):
    def to_json(self) -> str:
        return self.model_dump_json()

    @classmethod
    def from_json(cls: type[T], data: str) -> T:
        return cls.model_validate_json(data)


def _exact(value: str) -> str:
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {value!r}") from exc
    return value


class RatPointModel(_JsonMixin):
    type: Literal["rat"] = "rat"
    value: str

    @field_validator("value")
    @classmethod
    def check_value(cls, v: str) -> str:
        return _exact(v)


class AlgRepModel(_JsonMixin):
    type: Literal["arep"] = "arep"
    # Ascending coefficients, as in ``[:c0, c1, ...:]``.
    poly: list[str]
    lb: str
    ub: str

    @field_validator("lb", "ub")
    @classmethod
    def check_bound(cls, v: str) -> str:
        return _exact(v)

    @field_validator("poly")
    @classmethod
    def check_poly(cls, v: list[str]) -> list[str]:
        return [_exact(c) for c in v]


PointModel = Annotated[RatPointModel | AlgRepModel, Field(discriminator="type")]


class CertificateModel(_JsonMixin):
    kind: Literal["universal", "existential"]
    points: list[PointModel]


class CheckEntry(_JsonMixin):
    """One step of a certificate check, in the order it was performed."""

    check: str
    ok: bool
    detail: str = ""
