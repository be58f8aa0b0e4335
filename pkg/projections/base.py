"""Projection helpers.

Materialized views are rebuilt by folding ledger events into an object that
exposes ``apply(event)``; a view can resume from the last id it has seen.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import Protocol

from storage.event_store import EventRecord, EventStore


class AppliesEvent(Protocol):
    def apply(self, event: EventRecord) -> None:  # pragma: no cover - Protocol definition only
        ...


def apply_all(projection: AppliesEvent, records: Iterable[EventRecord], since_id: int = 0) -> int:
    """Fold ``records`` into ``projection`` and return the last id applied."""
    last = since_id
    for rec in records:
        projection.apply(rec)
        last = rec.id
    return last


def replay(projection: AppliesEvent, store: EventStore, since_id: int = 0) -> int:
    """Replay events newer than ``since_id`` from the store into the projection.

    Returns:
        The last processed event id (``since_id`` if none were new).
    """
    return apply_all(projection, store.read_since(since_id), since_id)
