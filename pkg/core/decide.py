"""Decision procedure: search for a certificate, then check it independently.

A true formula is certified directly. A false one is certified through its
negation (``forall`` becomes ``exists`` over the negated body and vice versa),
so every verdict carries a certificate that can be replayed later.
"""

from __future__ import annotations

from dataclasses import dataclass

import structlog

from agents.checker_agent import CheckerAgent, CheckReport
from agents.search_agent import SearchAgent
from core.errors import InconsistentVerdictError
from schemas.certificate import CheckEntry
from schemas.settings import EngineSettings
from tools.certificates import Certificate
from tools.formula import Formula
from tools.formula_parser import format_formula

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Verdict:
    """Outcome of ``decide``.

    ``certificate`` proves ``certifies``, which is the formula itself when
    ``truth`` is true and its negation otherwise.
    """

    formula: Formula
    truth: bool
    certifies: Formula
    certificate: Certificate
    report: tuple[CheckEntry, ...]
    source: str = "search"


def _certify(
    f: Formula, search: SearchAgent, checker: CheckerAgent
) -> tuple[Certificate | None, CheckReport]:
    report = CheckReport()
    cert = search.generate(f)
    if cert is None:
        report.add("search", False, "no witness among the sample points")
        return None, report
    if not checker.check_certificate(f, cert, report):
        return None, report
    return cert, report


def decide(
    f: Formula,
    settings: EngineSettings | None = None,
    *,
    search: SearchAgent | None = None,
    checker: CheckerAgent | None = None,
) -> Verdict:
    """Decide ``f`` and return a checked certificate for it or for its negation.

    Raises:
        InconsistentVerdictError: if both or neither of ``f`` and its negation
            check, which indicates a bug rather than bad input.
    """
    settings = settings or EngineSettings()
    search = search or SearchAgent()
    checker = checker or CheckerAgent(workers=settings.workers)
    neg = f.negated()

    cert, report = _certify(f, search, checker)
    if cert is not None:
        if settings.cross_check and _certify(neg, search, checker)[0] is not None:
            logger.error("verdict_inconsistent", formula=format_formula(f), reason="both")
            raise InconsistentVerdictError(
                f"both the formula and its negation were certified: {format_formula(f)}"
            )
        logger.info("formula_decided", formula=format_formula(f), truth=True)
        return Verdict(f, True, f, cert, tuple(report.entries))

    neg_cert, neg_report = _certify(neg, search, checker)
    if neg_cert is None:
        logger.error("verdict_inconsistent", formula=format_formula(f), reason="neither")
        raise InconsistentVerdictError(
            f"neither the formula nor its negation was certified: {format_formula(f)}"
        )
    logger.info("formula_decided", formula=format_formula(f), truth=False)
    return Verdict(f, False, neg, neg_cert, tuple(neg_report.entries))
