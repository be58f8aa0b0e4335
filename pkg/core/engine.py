"""Decision engine with an optional certificate ledger.

Without a ledger the engine is a thin wrapper over ``decide``. With one,
every verdict's certificate is recorded as a ``CertificateRecorded`` event and
later runs replay it instead of searching again. Recorded certificates are
never trusted: they are re-checked on every use, and a certificate that no
longer checks falls back to a fresh search.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

try:
    import structlog

    logger = structlog.get_logger(__name__)
except Exception:  # pragma: no cover - fallback when structlog is unavailable
    import logging

    logger = logging.getLogger(__name__)

from agents.checker_agent import CheckerAgent, CheckReport
from agents.search_agent import SearchAgent
from core.decide import Verdict, decide
from core.errors import UnivRcfError
from projections.base import replay
from projections.certificate_index import CertificateIndex, IndexedCertificate
from schemas import events as ev
from schemas.settings import EngineSettings
from storage.event_store import EventStore, formula_key
from tools.certificates import certificate_from_dict, certificate_to_dict
from tools.formula import Formula
from tools.formula_parser import format_formula, parse_formula


@dataclass
class ReplayResult:
    formula: str
    formula_key: str
    ok: bool
    detail: str = ""


class DecisionEngine:
    """Runs decisions through the search and checker agents and the ledger.

    Args:
        settings: Engine settings; ``ledger_path`` enables recording and replay.
    """

    def __init__(self, settings: EngineSettings | None = None) -> None:
        self.settings = settings or EngineSettings()
        self.search = SearchAgent()
        self.checker = CheckerAgent(workers=self.settings.workers)
        self.events: EventStore | None = None
        if self.settings.ledger_path is not None:
            self.events = EventStore(Path(self.settings.ledger_path))
        self._index = CertificateIndex()
        self._index_last_id = 0

    def __enter__(self) -> DecisionEngine:
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    def close(self) -> None:
        if self.events is not None:
            self.events.close()

    # -----------------------------
    # Ledger helpers
    # -----------------------------

    def _require_ledger(self) -> EventStore:
        if self.events is None:
            raise UnivRcfError("no ledger configured")
        return self.events

    def index(self) -> CertificateIndex:
        """The certificate index, brought up to date with the ledger."""
        store = self._require_ledger()
        self._index_last_id = replay(self._index, store, self._index_last_id)
        return self._index

    def _recheck(
        self, f: Formula, key: str, entry: IndexedCertificate
    ) -> tuple[bool, Formula, CheckReport]:
        store = self._require_ledger()
        certifies = f if entry.truth else f.negated()
        report = CheckReport()
        if format_formula(certifies) != entry.certifies:
            report.add("ledger_formula", False, "recorded certificate is for another formula")
            ok = False
        else:
            try:
                cert = certificate_from_dict(entry.certificate)
            except UnivRcfError as exc:
                report.add("ledger_certificate", False, str(exc))
                ok = False
            else:
                ok = self.checker.check_certificate(certifies, cert, report)
        store.append(ev.CertificateReplayed(formula_key=key, ok=ok), key=key)
        return ok, certifies, report

    # -----------------------------
    # Public API
    # -----------------------------

    def decide(self, f: Formula) -> Verdict:
        """Decide ``f``, replaying a recorded certificate when one still checks."""
        if self.events is None:
            return decide(f, self.settings, search=self.search, checker=self.checker)

        text = format_formula(f)
        key = formula_key(text)
        entry = self.index().get(key)
        if entry is not None:
            ok, certifies, report = self._recheck(f, key, entry)
            if ok:
                logger.info("ledger_hit", formula=text)
                return Verdict(
                    formula=f,
                    truth=entry.truth,
                    certifies=certifies,
                    certificate=certificate_from_dict(entry.certificate),
                    report=tuple(report.entries),
                    source="ledger",
                )
            logger.warning("ledger_stale", formula=text)
        else:
            logger.debug("ledger_miss", formula=text)

        verdict = decide(f, self.settings, search=self.search, checker=self.checker)
        self.events.append(
            ev.CertificateRecorded(
                formula=text,
                formula_key=key,
                truth=verdict.truth,
                certifies=format_formula(verdict.certifies),
                certificate=certificate_to_dict(verdict.certificate),
            ),
            key=key,
        )
        return verdict

    def replay_all(self) -> list[ReplayResult]:
        """Re-check every recorded certificate, oldest first.

        Raises:
            LedgerIntegrityError: if a ledger row fails checksum verification.
        """
        index = self.index()
        results: list[ReplayResult] = []
        for key, entry in sorted(index.entries.items(), key=lambda kv: kv[1].event_id):
            try:
                f = parse_formula(entry.formula)
            except UnivRcfError as exc:
                self._require_ledger().append(
                    ev.CertificateReplayed(formula_key=key, ok=False), key=key
                )
                results.append(ReplayResult(entry.formula, key, False, str(exc)))
                continue
            ok, _, report = self._recheck(f, key, entry)
            failed = [e for e in report.entries if not e.ok]
            detail = failed[0].detail if failed else f"{len(report.entries)} checks passed"
            results.append(ReplayResult(entry.formula, key, ok, detail))
        logger.info("ledger_replayed", count=len(results), failed=sum(not r.ok for r in results))
        return results
