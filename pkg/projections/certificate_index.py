"""Certificate index projection.

Latest recorded certificate per formula key, with replay tallies. The view is
deterministic: it reflects only ledger events, in ledger order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from storage.event_store import EventRecord


@dataclass
class IndexedCertificate:
    event_id: int
    formula: str
    truth: bool
    certifies: str
    certificate: dict[str, Any]


@dataclass
class CertificateIndex:
    """Materialized view over ``CertificateRecorded`` / ``CertificateReplayed`` events."""

    entries: dict[str, IndexedCertificate] = field(default_factory=dict)
    replays: dict[str, int] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)

    def apply(self, event: EventRecord) -> None:
        data = event.data
        if event.type == "CertificateRecorded":
            self.entries[str(data["formula_key"])] = IndexedCertificate(
                event_id=event.id,
                formula=str(data["formula"]),
                truth=bool(data["truth"]),
                certifies=str(data["certifies"]),
                certificate=dict(data["certificate"]),
            )
        elif event.type == "CertificateReplayed":
            key = str(data["formula_key"])
            self.replays[key] = self.replays.get(key, 0) + 1
            if not data["ok"]:
                self.failures[key] = self.failures.get(key, 0) + 1

    def get(self, key: str) -> IndexedCertificate | None:
        return self.entries.get(key)
