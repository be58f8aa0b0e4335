"""CheckerAgent: independent verification of decision certificates.

The checker trusts nothing it is given. Witnesses and root lists are
re-validated, root lists are checked for completeness with Sturm counts, and
the formula body is evaluated exactly on every region of the induced
decomposition of the real line. A bad certificate makes a check return
``False`` with a failed report entry; it never raises.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import structlog

from core.errors import UnivRcfError
from schemas.certificate import CheckEntry
from tools.certificates import Certificate, ExistCert, UnivCert
from tools.formula import (
    Formula,
    Quantifier,
    SignCondFormula,
    collect_polys,
    eval_qf_at,
    to_sign_conditions,
)
from tools.isolate import dedupe_sorted
from tools.poly import Sign
from tools.realalg import RealAlg, is_well_formed, sample_points, sign_at
from tools.sturm import NEG_INF, POS_INF, count_roots

logger = structlog.get_logger(__name__)


@dataclass
class CheckReport:
    """Ordered record of the checks performed for one certificate."""

    entries: list[CheckEntry] = field(default_factory=list)

    def add(self, check: str, ok: bool, detail: str = "") -> bool:
        self.entries.append(CheckEntry(check=check, ok=ok, detail=detail))
        logger.debug("certificate_check", check=check, ok=ok, detail=detail)
        return ok

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


class CheckerAgent:
    """Verifies existential witnesses and universal root lists.

    Args:
        workers: Thread pool size for sample evaluation; 1 evaluates in order
            on the calling thread. Verdicts do not depend on it, and the pure
            Python arithmetic holds the GIL, so more threads do not run faster.
    """

    def __init__(self, workers: int = 1) -> None:
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.workers = workers

    def check_existential(
        self, body: SignCondFormula, w: RealAlg, report: CheckReport | None = None
    ) -> bool:
        """True iff ``w`` is well formed and satisfies ``body``."""
        report = report if report is not None else CheckReport()
        body = to_sign_conditions(body)
        if not is_well_formed(w):
            return report.add("witness_well_formed", False, f"not isolating: {w}")
        report.add("witness_well_formed", True, str(w))
        return report.add("witness_satisfies", eval_qf_at(body, w), str(w))

    def check_universal(
        self,
        body: SignCondFormula,
        points: Sequence[RealAlg],
        report: CheckReport | None = None,
    ) -> bool:
        """True iff ``points`` is a complete root list on which ``body`` holds everywhere.

        Points are sorted and deduplicated by value before checking; points that
        are not roots of any formula polynomial are allowed and only refine the
        decomposition.
        """
        report = report if report is not None else CheckReport()
        body = to_sign_conditions(body)

        bad = [a for a in points if not is_well_formed(a)]
        if bad:
            return report.add("points_well_formed", False, f"not isolating: {bad[0]}")
        pts = dedupe_sorted(points)
        report.add("points_well_formed", True, f"{len(points)} given, {len(pts)} distinct")

        for p in collect_polys(body):
            found = sum(1 for a in pts if sign_at(p, a) == Sign.ZERO)
            expected = count_roots(p, NEG_INF, POS_INF)
            detail = f"{p}: {found} of {expected} roots listed"
            logger.debug("universal_completeness", poly=str(p), found=found, expected=expected)
            if not report.add("completeness", found == expected, detail):
                return False

        samples = sample_points(pts)
        results = self._evaluate(body, samples)
        failed = [s for s, ok in zip(samples, results) if not ok]
        if failed:
            return report.add("samples", False, f"body fails at {failed[0]}")
        return report.add("samples", True, f"{len(samples)} of {len(samples)} samples satisfy")

    def _evaluate(self, body: SignCondFormula, samples: list[RealAlg]) -> list[bool]:
        if self.workers == 1 or len(samples) == 1:
            return [eval_qf_at(body, s) for s in samples]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(lambda s: eval_qf_at(body, s), samples))

    def check_certificate(
        self, f: Formula, cert: Certificate, report: CheckReport | None = None
    ) -> bool:
        """Dispatch on the formula's quantifier; a certificate of the other kind fails."""
        report = report if report is not None else CheckReport()
        expected = ExistCert if f.quantifier is Quantifier.EXISTS else UnivCert
        if not isinstance(cert, expected):
            return report.add(
                "kind", False, f"{f.quantifier.value} needs a {expected.kind} certificate"
            )
        report.add("kind", True, cert.kind)
        try:
            if isinstance(cert, ExistCert):
                return self.check_existential(f.sign_body, cert.witness, report)
            return self.check_universal(f.sign_body, cert.points, report)
        except UnivRcfError as exc:
            return report.add("error", False, str(exc))


def check_existential(body: SignCondFormula, w: RealAlg) -> bool:
    return CheckerAgent().check_existential(body, w)


def check_universal(body: SignCondFormula, points: Sequence[RealAlg]) -> bool:
    return CheckerAgent().check_universal(body, points)


def check_certificate(f: Formula, cert: Certificate) -> bool:
    return CheckerAgent().check_certificate(f, cert)
