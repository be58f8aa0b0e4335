"""Exception hierarchy for univrcf.

Every concrete error also subclasses the builtin it refines so callers can
catch either ``UnivRcfError`` or e.g. ``ValueError``.
"""

from __future__ import annotations


class UnivRcfError(Exception):
    """Base class for all library errors."""


class ZeroPolynomialError(UnivRcfError, ValueError):
    """A zero polynomial was passed where a nonzero one is required."""


class PolynomialDivisionError(UnivRcfError, ZeroDivisionError):
    """Division by the zero polynomial."""


class DegreeError(UnivRcfError, ValueError):
    """A polynomial has too small a degree for the requested operation."""


class EndpointError(UnivRcfError, ValueError):
    """Interval endpoints are out of order or are roots of the polynomial."""


class InvalidAlgebraicError(UnivRcfError, ValueError):
    """An algebraic representation does not isolate exactly one root."""


class FormulaSyntaxError(UnivRcfError, ValueError):
    """Formula or polynomial text could not be parsed.

    Attributes:
        position: 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class CertificateFormatError(UnivRcfError, ValueError):
    """Certificate text or JSON is malformed, or does not fit the formula."""


class InconsistentVerdictError(UnivRcfError, RuntimeError):
    """Both or neither of a formula and its negation were certified."""


class LedgerIntegrityError(UnivRcfError, RuntimeError):
    """A ledger row failed its checksum verification."""
