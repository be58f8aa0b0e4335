"""SearchAgent: produces candidate certificates for the checker.

The search side is untrusted. It isolates the real roots of every polynomial
in the formula and either returns that root list (universal formulas) or
scans the induced sample points for a witness (existential formulas). Nothing
it returns is believed until ``CheckerAgent`` has verified it.
"""

from __future__ import annotations

import structlog

from tools.certificates import Certificate, ExistCert, UnivCert
from tools.formula import Formula, Quantifier, collect_polys, eval_qf_at
from tools.isolate import isolate_all
from tools.realalg import RealAlg, sample_points

logger = structlog.get_logger(__name__)


class SearchAgent:
    """Native certificate search backed by Sturm-based root isolation."""

    def roots(self, f: Formula) -> list[RealAlg]:
        """Sorted distinct real roots of the polynomials of ``f``'s normal form."""
        return isolate_all(collect_polys(f.sign_body))

    def find_witness(self, f: Formula) -> RealAlg | None:
        """First sample satisfying the body: roots ascending, then the gap rationals."""
        roots = self.roots(f)
        samples = sample_points(roots)
        # sample_points interleaves; even positions are the gap rationals.
        ordered = samples[1::2] + samples[0::2]
        for s in ordered:
            if eval_qf_at(f.sign_body, s):
                return s
        return None

    def generate(self, f: Formula) -> Certificate | None:
        """Candidate certificate for ``f``, or ``None`` when no witness exists.

        ``None`` only arises for existential formulas; it means the negation
        holds and should be certified universally.
        """
        logger.debug("search_started", quantifier=f.quantifier.value)
        if f.quantifier is Quantifier.FORALL:
            cert: Certificate | None = UnivCert(tuple(self.roots(f)))
        else:
            w = self.find_witness(f)
            cert = ExistCert(w) if w is not None else None
        logger.debug("search_finished", found=cert is not None)
        return cert


def generate_certificate(f: Formula) -> Certificate | None:
    return SearchAgent().generate(f)
