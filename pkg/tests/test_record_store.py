from __future__ import annotations

import json
import random
import threading
from datetime import date, datetime, timezone

import pytest

from caselens.errors import (
    DuplicateIdError,
    RangeError,
    SchemaError,
    UnknownRecord,
    ValidationError,
)
from caselens.records.documents import (
    parse_entry_payload,
    record_to_document,
    serialize,
    validate_and_load,
)
from caselens.records.entities import (
    BiometricDay,
    HomeworkSubmission,
    HomeworkType,
    ThoughtRecord,
)
from caselens.records.store import RecordStore

from helpers import random_record


def minimal_document(**overrides) -> dict:
    doc = {
        "schema_version": 1,
        "record_id": "r1",
        "client_label": "Test",
    }
    doc.update(overrides)
    return doc


class TestValidateAndLoad:
    def test_elias_fixture_has_seven_thought_records(self, elias_record):
        thought_records = [
            s
            for s in elias_record.submissions
            if s.homework_type is HomeworkType.THOUGHT_RECORD
        ]
        assert len(thought_records) == 7
        assert thought_records[0].body.trigger_situation == "My paper got rejected."

    def test_empty_record_is_valid(self):
        record = validate_and_load(json.dumps(minimal_document()))
        assert record.record_id == "r1"
        assert record.submissions == ()
        assert list(record.iter_entries()) == []

    def test_mood_out_of_range_names_field_path(self):
        doc = minimal_document(
            submissions=[
                {
                    "entry_id": "s1",
                    "submitted_at": "2025-04-01T10:00:00Z",
                    "homework_type": "journaling",
                    "duration_minutes": 10,
                    "self_rated_quality": 3,
                    "mood_before": 11,
                    "mood_after": 5,
                    "body": "text",
                }
            ]
        )
        with pytest.raises(RangeError) as exc:
            validate_and_load(json.dumps(doc))
        assert exc.value.path == "$.submissions[0].mood_before"

    def test_quality_out_of_range(self):
        doc = minimal_document(
            submissions=[
                {
                    "entry_id": "s1",
                    "submitted_at": "2025-04-01T10:00:00Z",
                    "homework_type": "journaling",
                    "duration_minutes": 10,
                    "self_rated_quality": 0,
                    "mood_before": 5,
                    "mood_after": 5,
                    "body": "text",
                }
            ]
        )
        with pytest.raises(RangeError):
            validate_and_load(json.dumps(doc))

    def test_duplicate_entry_ids_rejected(self):
        doc = minimal_document(
            emotion_logs=[
                {"entry_id": "x", "date": "2025-04-01", "interval": "6am-10am", "descriptor": "Relaxed"},
                {"entry_id": "x", "date": "2025-04-02", "interval": "6am-10am", "descriptor": "Bored"},
            ]
        )
        with pytest.raises(DuplicateIdError):
            validate_and_load(json.dumps(doc))

    def test_duplicate_biometric_date_rejected(self):
        day = {
            "date": "2025-04-01",
            "sleep_hours": 7.0,
            "resting_heart_rate_bpm": 60,
            "activity_steps": 100,
            "mindfulness_minutes": 0,
        }
        doc = minimal_document(
            biometric_days=[{"entry_id": "b1", **day}, {"entry_id": "b2", **day}]
        )
        with pytest.raises(SchemaError):
            validate_and_load(json.dumps(doc))

    def test_unknown_enum_value_names_path(self):
        doc = minimal_document(
            emotion_logs=[
                {"entry_id": "x", "date": "2025-04-01", "interval": "midnight", "descriptor": "Relaxed"}
            ]
        )
        with pytest.raises(SchemaError) as exc:
            validate_and_load(json.dumps(doc))
        assert "interval" in exc.value.path

    def test_assessment_total_must_match_item_sum(self):
        doc = minimal_document(
            assessments=[
                {
                    "entry_id": "a1",
                    "administered_at": "2025-04-01T10:00:00Z",
                    "instrument": "GAD7",
                    "items": [{"text": "q1", "score": 2}],
                    "total": 5,
                }
            ]
        )
        with pytest.raises(SchemaError) as exc:
            validate_and_load(json.dumps(doc))
        assert "total" in exc.value.path

    def test_reading_lists_must_be_disjoint(self):
        doc = minimal_document(reading_materials={"finished": ["A"], "not_finished": ["A"]})
        with pytest.raises(SchemaError):
            validate_and_load(json.dumps(doc))

    def test_naive_timestamp_rejected(self):
        doc = minimal_document(
            messages=[
                {
                    "message_id": "m1",
                    "sent_at": "2025-04-01T10:00:00",
                    "direction": "to_client",
                    "text": "hi",
                }
            ]
        )
        with pytest.raises(SchemaError):
            validate_and_load(json.dumps(doc))

    def test_not_json_rejected(self):
        with pytest.raises(SchemaError):
            validate_and_load("{nope")

    def test_round_trip_structural_equality(self, elias_record):
        reloaded = validate_and_load(serialize(elias_record))
        assert reloaded == elias_record

    def test_round_trip_random_records(self):
        rng = random.Random(7)
        for i in range(25):
            record = random_record(rng, f"rt-{i}")
            assert validate_and_load(serialize(record)) == record


class TestStore:
    def test_ingest_thought_record_from_payload(self, store):
        before = len(store.load("elias").submissions)
        entry = parse_entry_payload(
            "thought_record",
            {
                "submitted_at": "2025-04-19T20:00:00Z",
                "duration_minutes": 20,
                "self_rated_quality": 4,
                "mood_before": 4,
                "mood_after": 7,
                "body": {
                    "trigger_situation": "My paper got rejected.",
                    "automatic_thought": "My papers will never be accepted.",
                    "rational_response": "Take this rejection as a learning experience.",
                },
            },
        )
        entry_id = store.ingest_entry("elias", entry)
        record = store.load("elias")
        assert entry_id
        assert len(record.submissions) == before + 1
        assert record.entry_by_id(entry_id) is not None

    def test_ingest_duplicate_biometric_date_rejected(self, store):
        day = store.load("elias").biometric_days[0].date
        entry = BiometricDay(
            entry_id="",
            date=day,
            sleep_hours=7.0,
            resting_heart_rate_bpm=60,
            activity_steps=1000,
            mindfulness_minutes=5,
        )
        with pytest.raises(ValidationError):
            store.ingest_entry("elias", entry)

    def test_ingest_unknown_record(self, store):
        entry = parse_entry_payload(
            "emotion_log",
            {"date": "2025-04-01", "interval": "6am-10am", "descriptor": "Relaxed"},
        )
        with pytest.raises(UnknownRecord):
            store.ingest_entry("ghost", entry)

    def test_thirty_random_ingests_listed_in_timestamp_order(self, tmp_path):
        store = RecordStore(tmp_path / "s.db")
        store.put_record(json.dumps(minimal_document(record_id="r")))
        rng = random.Random(3)
        inserted = []
        for i in range(30):
            sub = HomeworkSubmission(
                entry_id="",
                submitted_at=datetime(
                    2025, 4, rng.randint(1, 28), rng.randint(0, 23), tzinfo=timezone.utc
                ),
                homework_type=HomeworkType.JOURNALING,
                duration_minutes=rng.randint(0, 60),
                self_rated_quality=rng.randint(1, 5),
                mood_before=rng.randint(1, 10),
                mood_after=rng.randint(1, 10),
                body=f"entry {i}",
            )
            entry_id = store.ingest_entry("r", sub)
            inserted.append((sub.submitted_at, entry_id))
        listed = store.list_entries("r")
        assert len(listed) == 30
        # Oracle: sort of the inserted set.
        expected = [eid for _, eid in sorted(inserted, key=lambda p: (p[0], p[1]))]
        assert [e.entry_id for e in listed] == expected

    def test_list_entries_kind_filter_thought_records(self, store):
        entries = store.list_entries("elias", kinds={"thought_record"})
        assert len(entries) == 7
        assert all(e.homework_type is HomeworkType.THOUGHT_RECORD for e in entries)

    def test_list_entries_empty_range(self, store):
        assert store.list_entries(
            "elias", date_range=(date(2025, 4, 10), date(2025, 4, 1))
        ) == []

    def test_list_entries_unknown_record(self, store):
        with pytest.raises(UnknownRecord):
            store.list_entries("ghost")

    def test_list_entries_matches_brute_force_scan(self, tmp_path):
        rng = random.Random(11)
        store = RecordStore(tmp_path / "s.db")
        from datetime import timedelta

        for i in range(10):
            record = random_record(rng, f"r{i}")
            store.save(record)
            lo = date(2025, 1, 20) + timedelta(days=rng.randint(0, 30))
            hi = date(2025, 3, 1) + timedelta(days=rng.randint(0, 30))
            kinds = rng.choice(
                [None, {"thought_record"}, {"biometric_day", "emotion_log"}, {"submission"}]
            )
            got = store.list_entries(f"r{i}", kinds=kinds, date_range=(lo, hi))
            expected = []
            for entry in record.iter_entries():
                day = entry.occurred_at.date()
                if day < lo or day > hi:
                    continue
                if kinds is not None:
                    is_submission = isinstance(entry, HomeworkSubmission)
                    match = entry.kind in kinds or (is_submission and "submission" in kinds)
                    if not match:
                        continue
                expected.append(entry.entry_id)
            assert [e.entry_id for e in got] == expected

    def test_no_filter_returns_every_entry_exactly_once(self, store):
        record = store.load("elias")
        listed = [e.entry_id for e in store.list_entries("elias")]
        assert sorted(listed) == sorted(e.entry_id for e in record.iter_entries())
        assert len(set(listed)) == len(listed)

    def test_concurrent_ingests_are_serialized(self, tmp_path):
        store = RecordStore(tmp_path / "s.db")
        store.put_record(json.dumps(minimal_document(record_id="r")))

        def ingest(n):
            for i in range(10):
                store.ingest_entry(
                    "r",
                    HomeworkSubmission(
                        entry_id="",
                        submitted_at=datetime(2025, 4, 1, n, i, tzinfo=timezone.utc),
                        homework_type=HomeworkType.JOURNALING,
                        duration_minutes=5,
                        self_rated_quality=3,
                        mood_before=5,
                        mood_after=6,
                        body=f"w{n}-{i}",
                    ),
                )

        threads = [threading.Thread(target=ingest, args=(n,)) for n in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        record = store.load("r")
        assert len(record.submissions) == 40
        ids = [s.entry_id for s in record.submissions]
        assert len(set(ids)) == 40

    def test_edit_and_delete_entry(self, store):
        store.edit_entry("elias", "tr-001", duration_minutes=45)
        record = store.load("elias")
        assert record.entry_by_id("tr-001").duration_minutes == 45
        store.delete_entry("elias", "tr-001")
        assert store.load("elias").entry_by_id("tr-001") is None

    def test_record_document_shape(self, store):
        doc = record_to_document(store.load("elias"))
        assert doc["schema_version"] == 1
        assert doc["record_id"] == "elias"
        assert {"submissions", "emotion_logs", "reading_materials"} <= set(doc)
