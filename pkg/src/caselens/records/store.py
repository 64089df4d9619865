"""Embedded single-file store: one canonical document per client record.

SQLite gives the single file, durability, and cross-process locking; within a
process, writes to a record queue behind a per-record mutex so concurrent
ingests never interleave (no last-writer-wins). Reads are lock-free snapshots.
Therapist config and dashboard layouts live in the same file as versioned
documents.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from contextlib import contextmanager
from dataclasses import replace
from datetime import date
from pathlib import Path
from typing import Any, Iterable

from ..errors import UnknownRecord, ValidationError
from .documents import (
    record_to_document,
    serialize,
    validate_and_load,
    with_collection,
)
from .entities import (
    BiometricDay,
    ClientRecord,
    Entry,
    HomeworkSubmission,
    entry_matches_kind,
)

_SCHEMA = """
CREATE TABLE IF NOT EXISTS records (
    record_id TEXT PRIMARY KEY,
    document  TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS documents (
    key     TEXT PRIMARY KEY,
    version INTEGER NOT NULL,
    body    TEXT NOT NULL
);
"""


class RecordStore:
    def __init__(self, path: str | Path):
        self._path = str(path)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        with self._connect() as conn:
            conn.executescript(_SCHEMA)

    @contextmanager
    def _connect(self):
        conn = sqlite3.connect(self._path, timeout=30.0)
        try:
            yield conn
            conn.commit()
        finally:
            conn.close()

    def _record_lock(self, record_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(record_id, threading.Lock())

    # -- record documents ---------------------------------------------------

    def put_record(self, raw_document: str) -> ClientRecord:
        """Validate and persist a whole canonical document (create or replace)."""
        record = validate_and_load(raw_document)
        with self._record_lock(record.record_id):
            self._write_record(record)
        return record

    def save(self, record: ClientRecord) -> None:
        with self._record_lock(record.record_id):
            self._write_record(record)

    def _write_record(self, record: ClientRecord) -> None:
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO records(record_id, document) VALUES(?, ?) "
                "ON CONFLICT(record_id) DO UPDATE SET document = excluded.document",
                (record.record_id, serialize(record)),
            )

    def load(self, record_id: str) -> ClientRecord:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT document FROM records WHERE record_id = ?", (record_id,)
            ).fetchone()
        if row is None:
            raise UnknownRecord(f"no record {record_id!r}")
        return validate_and_load(row[0])

    def load_document(self, record_id: str) -> dict:
        return record_to_document(self.load(record_id))

    def exists(self, record_id: str) -> bool:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT 1 FROM records WHERE record_id = ?", (record_id,)
            ).fetchone()
        return row is not None

    def list_clients(self) -> list[tuple[str, str]]:
        with self._connect() as conn:
            rows = conn.execute("SELECT record_id, document FROM records").fetchall()
        clients = []
        for record_id, document in rows:
            label = json.loads(document).get("client_label", "")
            clients.append((record_id, label))
        clients.sort()
        return clients

    def delete_record(self, record_id: str) -> None:
        with self._record_lock(record_id):
            with self._connect() as conn:
                conn.execute("DELETE FROM records WHERE record_id = ?", (record_id,))

    # -- entry operations ---------------------------------------------------

    def _next_entry_id(self, record: ClientRecord) -> tuple[str, int]:
        existing = {e.entry_id for e in record.iter_entries()}
        seq = record.entry_seq
        while True:
            seq += 1
            candidate = f"e{seq:06d}"
            if candidate not in existing:
                return candidate, seq

    def ingest_entry(self, record_id: str, entry: Entry) -> str:
        """Persist a new entry under a fresh server-assigned entry id."""
        with self._record_lock(record_id):
            record = self.load(record_id)
            if isinstance(entry, BiometricDay) and any(
                d.date == entry.date for d in record.biometric_days
            ):
                raise ValidationError(
                    f"biometric day for {entry.date.isoformat()} already present",
                    "$.biometric_days",
                )
            entry_id, seq = self._next_entry_id(record)
            id_field = (
                "goal_id"
                if hasattr(entry, "goal_id")
                else "message_id" if hasattr(entry, "message_id") else "entry_id"
            )
            entry = replace(entry, **{id_field: entry_id})
            record = with_collection(
                record, entry, self._collection_for(record, entry) + (entry,)
            )
            record = replace(record, entry_seq=seq)
            self._write_record(record)
        return entry_id

    @staticmethod
    def _collection_for(record: ClientRecord, entry: Entry) -> tuple:
        by_type = {
            "HomeworkSubmission": record.submissions,
            "EmotionLog": record.emotion_logs,
            "ActivityLog": record.activity_logs,
            "AssessmentResult": record.assessments,
            "BiometricDay": record.biometric_days,
            "TherapyGoal": record.goals,
            "Message": record.messages,
        }
        return by_type[type(entry).__name__]

    def edit_entry(self, record_id: str, entry_id: str, **changes: Any) -> Entry:
        """Replace fields on an existing entry (provenance marks it stale)."""
        with self._record_lock(record_id):
            record = self.load(record_id)
            target = record.entry_by_id(entry_id)
            if target is None or not hasattr(target, "occurred_at"):
                raise UnknownRecord(f"no entry {entry_id!r} in record {record_id!r}")
            updated = replace(target, **changes)
            remaining = tuple(
                e for e in self._collection_for(record, target) if e.entry_id != entry_id
            )
            record = with_collection(record, updated, remaining + (updated,))
            self._write_record(record)
        return updated

    def delete_entry(self, record_id: str, entry_id: str) -> None:
        with self._record_lock(record_id):
            record = self.load(record_id)
            target = record.entry_by_id(entry_id)
            if target is None or not hasattr(target, "occurred_at"):
                raise UnknownRecord(f"no entry {entry_id!r} in record {record_id!r}")
            remaining = tuple(
                e for e in self._collection_for(record, target) if e.entry_id != entry_id
            )
            record = with_collection(record, target, remaining)
            self._write_record(record)

    def list_entries(
        self,
        record_id: str,
        kinds: Iterable[str] | None = None,
        date_range: tuple[date, date] | None = None,
    ) -> list[Entry]:
        """Entries matching ``kinds`` and the inclusive date range, ascending
        by timestamp. No filter returns every entry."""
        record = self.load(record_id)
        kind_set = frozenset(kinds) if kinds else None
        out = []
        for entry in record.iter_entries():
            if kind_set is not None and not entry_matches_kind(entry, kind_set):
                continue
            if date_range is not None:
                start, end = date_range
                day = entry.occurred_at.date()
                if day < start or day > end:
                    continue
            out.append(entry)
        return out

    # -- versioned config / layout documents ---------------------------------

    def put_document(self, key: str, body: dict) -> int:
        with self._connect() as conn:
            row = conn.execute("SELECT version FROM documents WHERE key = ?", (key,)).fetchone()
            version = (row[0] if row else 0) + 1
            conn.execute(
                "INSERT INTO documents(key, version, body) VALUES(?, ?, ?) "
                "ON CONFLICT(key) DO UPDATE SET version = excluded.version, body = excluded.body",
                (key, version, json.dumps(body, ensure_ascii=False)),
            )
        return version

    def get_document(self, key: str) -> dict | None:
        with self._connect() as conn:
            row = conn.execute("SELECT body FROM documents WHERE key = ?", (key,)).fetchone()
        return json.loads(row[0]) if row else None
