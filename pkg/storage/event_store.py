"""SQLite-backed append-only certificate ledger.

Events are stored with a checksum over their type and canonical JSON payload;
every read re-verifies it, so a tampered or corrupted row is reported instead
of replayed. Rows may carry a lookup key (the formula key) for direct access.
"""

from __future__ import annotations

import json
import sqlite3
import time
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from core.errors import LedgerIntegrityError

try:  # Prefer blake3 if available
    from blake3 import blake3 as _blake3

    def _hash_bytes(data: bytes) -> str:
        return _blake3(data).hexdigest()
except Exception:  # Fallback to sha256 if blake3 is unavailable
    import hashlib

    def _hash_bytes(data: bytes) -> str:
        return hashlib.sha256(data).hexdigest()


SCHEMA_VERSION = 1


@dataclass(frozen=True)
class EventRecord:
    """Stored event row."""

    id: int
    ts: int
    type: str
    key: str | None
    data: Mapping[str, Any]
    checksum: str
    schema_ver: int


def _canonical_bytes(payload: Mapping[str, Any]) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


class EventStore:
    """SQLite append-only store.

    Creates the ``events`` table if it does not exist. Uses WAL for durability.

    Args:
        db_path: Path to the SQLite database file.
    """

    def __init__(self, db_path: Path) -> None:
        self._db_path = Path(db_path)
        if self._db_path.parent and not self._db_path.parent.exists():
            self._db_path.parent.mkdir(parents=True, exist_ok=True)
        # Universal checks may run on worker threads; writes stay on the caller's.
        self._conn = sqlite3.connect(str(self._db_path), check_same_thread=False)
        self._conn.execute("PRAGMA journal_mode=WAL;")
        self._conn.execute("PRAGMA synchronous=NORMAL;")
        self._conn.execute(
            "CREATE TABLE IF NOT EXISTS events (\n"
            "  id INTEGER PRIMARY KEY AUTOINCREMENT,\n"
            "  ts INTEGER NOT NULL,\n"
            "  type TEXT NOT NULL,\n"
            "  key TEXT,\n"
            "  data BLOB NOT NULL,\n"
            "  checksum TEXT NOT NULL,\n"
            "  schema_ver INTEGER NOT NULL\n"
            ")"
        )
        self._conn.execute("CREATE INDEX IF NOT EXISTS events_key ON events (key)")
        self._conn.commit()

    @property
    def path(self) -> Path:
        return self._db_path

    def _event_to_type_and_bytes(self, event: Any) -> tuple[str, bytes]:
        if hasattr(event, "model_dump") and callable(event.model_dump):
            payload = event.model_dump(mode="json")
            event_type = str(payload.get("type") or event.__class__.__name__)
        elif isinstance(event, Mapping) and "type" in event and "data" in event:
            event_type = str(event["type"])
            payload = dict(event["data"])
        else:
            raise TypeError(f"cannot store event of type {type(event).__name__}")
        return event_type, _canonical_bytes(payload)

    def append(self, event: Any, key: str | None = None) -> int:
        """Append a single event.

        Args:
            event: Pydantic model instance, or a ``{"type", "data"}`` mapping.
            key: Optional lookup key for ``read_by_key``.

        Returns:
            Inserted row id.
        """
        event_type, data_bytes = self._event_to_type_and_bytes(event)
        ts = int(time.time() * 1000)
        checksum = _hash_bytes(event_type.encode("utf-8") + data_bytes)
        cur = self._conn.execute(
            "INSERT INTO events (ts, type, key, data, checksum, schema_ver)"
            " VALUES (?, ?, ?, ?, ?, ?)",
            (ts, event_type, key, data_bytes, checksum, SCHEMA_VERSION),
        )
        self._conn.commit()
        assert cur.lastrowid is not None
        return int(cur.lastrowid)

    def _records(self, where: str, params: tuple[Any, ...]) -> list[EventRecord]:
        cur = self._conn.execute(
            "SELECT id, ts, type, key, data, checksum, schema_ver FROM events "
            f"WHERE {where} ORDER BY id ASC",
            params,
        )
        out: list[EventRecord] = []
        for r in cur.fetchall():
            raw = bytes(r[4]) if not isinstance(r[4], str) else r[4].encode("utf-8")
            if _hash_bytes(str(r[2]).encode("utf-8") + raw) != str(r[5]):
                raise LedgerIntegrityError(f"checksum mismatch in ledger row {r[0]}")
            try:
                data = json.loads(raw)
            except ValueError as exc:
                raise LedgerIntegrityError(f"unreadable payload in ledger row {r[0]}") from exc
            out.append(
                EventRecord(
                    id=int(r[0]),
                    ts=int(r[1]),
                    type=str(r[2]),
                    key=(str(r[3]) if r[3] is not None else None),
                    data=data,
                    checksum=str(r[5]),
                    schema_ver=int(r[6]),
                )
            )
        return out

    def read_since(self, last_id: int) -> list[EventRecord]:
        """Read events with id greater than the provided value.

        Raises:
            LedgerIntegrityError: if a row fails checksum verification.
        """
        return self._records("id > ?", (last_id,))

    def read_all(self) -> list[EventRecord]:
        """Read all events in id order."""
        return self.read_since(0)

    def read_by_key(self, key: str) -> list[EventRecord]:
        """Read the events stored under ``key`` in id order."""
        return self._records("key = ?", (key,))

    def last_id(self) -> int:
        """Return the last inserted event id, or 0 if empty."""
        cur = self._conn.execute("SELECT COALESCE(MAX(id), 0) FROM events")
        (val,) = cur.fetchone()
        return int(val)

    def close(self) -> None:
        """Close the underlying SQLite connection."""
        try:
            self._conn.close()
        except Exception:
            pass


def compute_checksum(event_type: str, payload: Mapping[str, Any]) -> str:
    """Checksum of an event as stored.

    Args:
        event_type: Event type name.
        payload: JSON-serializable mapping.

    Returns:
        Hex digest string using preferred hash (blake3 if available).
    """
    return _hash_bytes(event_type.encode("utf-8") + _canonical_bytes(payload))


def formula_key(text: str) -> str:
    """Ledger key of a formula: the digest of its canonical printed text."""
    return _hash_bytes(text.encode("utf-8"))
