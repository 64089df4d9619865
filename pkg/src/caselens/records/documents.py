"""Canonical record document format: serialization, parsing, validation.

The wire format is JSON with a top-level ``schema_version``; the full schema
is documented in docs/schema.md. Validation is total: a document either
yields a ClientRecord satisfying every type invariant or raises a typed
error naming the offending path. No partially-loaded state escapes.
"""

from __future__ import annotations

import json
from dataclasses import replace
from datetime import date, datetime, timezone
from enum import Enum
from typing import Any, Type

from ..errors import DuplicateIdError, RangeError, SchemaError, ValidationError
from .entities import (
    ActivityBlock,
    ActivityLog,
    AssessmentItem,
    AssessmentResult,
    BiometricDay,
    ClientRecord,
    EmotionDescriptor,
    EmotionInterval,
    EmotionLog,
    Entry,
    GoalStatus,
    HomeworkSubmission,
    HomeworkType,
    Instrument,
    Message,
    MessageDirection,
    ReadingStatus,
    TherapyGoal,
    ThoughtRecord,
    Thresholds,
    canonical_json,
    sha256_hex,
)

SCHEMA_VERSION = 1
TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def format_ts(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime(TIMESTAMP_FORMAT)


def parse_ts(value: Any, path: str) -> datetime:
    if not isinstance(value, str):
        raise SchemaError(f"expected UTC timestamp string at {path}", path)
    text = value[:-1] + "+00:00" if value.endswith("Z") else value
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        raise SchemaError(f"invalid timestamp {value!r} at {path}", path) from None
    if parsed.tzinfo is None:
        raise SchemaError(f"timestamp at {path} must carry a UTC offset", path)
    return parsed.astimezone(timezone.utc)


def parse_date(value: Any, path: str) -> date:
    if not isinstance(value, str):
        raise SchemaError(f"expected YYYY-MM-DD date string at {path}", path)
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise SchemaError(f"invalid date {value!r} at {path}", path) from None


def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(f"missing field at {path}.{key}", f"{path}.{key}")
    return obj[key]


def _str(obj: dict, key: str, path: str, allow_empty: bool = False) -> str:
    value = _require(obj, key, path)
    if not isinstance(value, str):
        raise SchemaError(f"expected string at {path}.{key}", f"{path}.{key}")
    if not allow_empty and not value.strip():
        raise SchemaError(f"empty string at {path}.{key}", f"{path}.{key}")
    return value


def _int(obj: dict, key: str, path: str) -> int:
    value = _require(obj, key, path)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected integer at {path}.{key}", f"{path}.{key}")
    return value


def _int_range(obj: dict, key: str, path: str, lo: int | None, hi: int | None) -> int:
    value = _int(obj, key, path)
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        bound = f"{lo}..{hi}" if hi is not None else f">= {lo}"
        raise RangeError(f"{path}.{key} = {value} outside {bound}", f"{path}.{key}")
    return value


def _enum(obj: dict, key: str, path: str, enum_cls: Type[Enum]) -> Any:
    value = _require(obj, key, path)
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise SchemaError(
            f"{path}.{key} = {value!r} not one of: {allowed}", f"{path}.{key}"
        ) from None


def _obj(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"expected object at {path}", path)
    return value


def _list(obj: dict, key: str, path: str) -> list:
    value = obj.get(key, [])
    if not isinstance(value, list):
        raise SchemaError(f"expected list at {path}.{key}", f"{path}.{key}")
    return value


# ---------------------------------------------------------------------------
# Entry parsers (document -> entity). ``require_id=False`` is the ingest path,
# where entry ids are always assigned server-side.
# ---------------------------------------------------------------------------


def _entry_id(obj: dict, path: str, require_id: bool, id_key: str = "entry_id") -> str:
    if not require_id and id_key not in obj:
        return ""
    return _str(obj, id_key, path)


def parse_submission(raw: Any, path: str, require_id: bool = True) -> HomeworkSubmission:
    obj = _obj(raw, path)
    homework_type = _enum(obj, "homework_type", path, HomeworkType)
    type_label = obj.get("type_label")
    if homework_type is HomeworkType.OTHER:
        if not isinstance(type_label, str) or not type_label.strip():
            raise SchemaError(
                f"{path}.type_label required and non-empty for homework_type 'other'",
                f"{path}.type_label",
            )
    body_raw = _require(obj, "body", path)
    body: str | ThoughtRecord
    if isinstance(body_raw, dict):
        body = parse_thought_record(body_raw, f"{path}.body")
    elif isinstance(body_raw, str):
        body = body_raw
    else:
        raise SchemaError(f"{path}.body must be text or a thought record object", f"{path}.body")
    return HomeworkSubmission(
        entry_id=_entry_id(obj, path, require_id),
        submitted_at=parse_ts(_require(obj, "submitted_at", path), f"{path}.submitted_at"),
        homework_type=homework_type,
        duration_minutes=_int_range(obj, "duration_minutes", path, 0, None),
        self_rated_quality=_int_range(obj, "self_rated_quality", path, 1, 5),
        mood_before=_int_range(obj, "mood_before", path, 1, 10),
        mood_after=_int_range(obj, "mood_after", path, 1, 10),
        body=body,
        type_label=type_label if homework_type is HomeworkType.OTHER else None,
    )


def parse_thought_record(raw: Any, path: str) -> ThoughtRecord:
    obj = _obj(raw, path)
    evidence = obj.get("evidence")
    if evidence is not None and not isinstance(evidence, str):
        raise SchemaError(f"expected string at {path}.evidence", f"{path}.evidence")
    return ThoughtRecord(
        trigger_situation=_str(obj, "trigger_situation", path),
        automatic_thought=_str(obj, "automatic_thought", path),
        rational_response=_str(obj, "rational_response", path),
        evidence=evidence,
    )


def parse_emotion_log(raw: Any, path: str, require_id: bool = True) -> EmotionLog:
    obj = _obj(raw, path)
    return EmotionLog(
        entry_id=_entry_id(obj, path, require_id),
        date=parse_date(_require(obj, "date", path), f"{path}.date"),
        interval=_enum(obj, "interval", path, EmotionInterval),
        descriptor=_enum(obj, "descriptor", path, EmotionDescriptor),
    )


def parse_activity_log(raw: Any, path: str, require_id: bool = True) -> ActivityLog:
    obj = _obj(raw, path)
    return ActivityLog(
        entry_id=_entry_id(obj, path, require_id),
        date=parse_date(_require(obj, "date", path), f"{path}.date"),
        block=_enum(obj, "block", path, ActivityBlock),
        description=_str(obj, "description", path),
    )


def parse_assessment(raw: Any, path: str, require_id: bool = True) -> AssessmentResult:
    obj = _obj(raw, path)
    instrument = _enum(obj, "instrument", path, Instrument)
    instrument_label = obj.get("instrument_label")
    if instrument is Instrument.OTHER:
        if not isinstance(instrument_label, str) or not instrument_label.strip():
            raise SchemaError(
                f"{path}.instrument_label required for instrument 'other'",
                f"{path}.instrument_label",
            )
    items_raw = _require(obj, "items", path)
    if not isinstance(items_raw, list):
        raise SchemaError(f"expected list at {path}.items", f"{path}.items")
    items = []
    for i, item_raw in enumerate(items_raw):
        item_path = f"{path}.items[{i}]"
        item_obj = _obj(item_raw, item_path)
        items.append(
            AssessmentItem(
                text=_str(item_obj, "text", item_path),
                score=_int(item_obj, "score", item_path),
            )
        )
    total = _int(obj, "total", path)
    if total != sum(item.score for item in items):
        raise SchemaError(
            f"{path}.total = {total} does not equal the item score sum", f"{path}.total"
        )
    thresholds_raw = obj.get("thresholds")
    thresholds = Thresholds()
    if thresholds_raw is not None:
        t_path = f"{path}.thresholds"
        t_obj = _obj(thresholds_raw, t_path)
        item_thresholds = t_obj.get("items", [])
        if not isinstance(item_thresholds, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in item_thresholds
        ):
            raise SchemaError(f"expected integer list at {t_path}.items", f"{t_path}.items")
        if item_thresholds and len(item_thresholds) != len(items):
            raise SchemaError(
                f"{t_path}.items must cover every item ({len(items)}) or be empty",
                f"{t_path}.items",
            )
        total_threshold = t_obj.get("total")
        if total_threshold is not None and (
            isinstance(total_threshold, bool) or not isinstance(total_threshold, int)
        ):
            raise SchemaError(f"expected integer at {t_path}.total", f"{t_path}.total")
        thresholds = Thresholds(items=tuple(item_thresholds), total=total_threshold)
    return AssessmentResult(
        entry_id=_entry_id(obj, path, require_id),
        administered_at=parse_ts(_require(obj, "administered_at", path), f"{path}.administered_at"),
        instrument=instrument,
        items=tuple(items),
        total=total,
        thresholds=thresholds,
        instrument_label=instrument_label if instrument is Instrument.OTHER else None,
    )


def parse_biometric_day(raw: Any, path: str, require_id: bool = True) -> BiometricDay:
    obj = _obj(raw, path)
    sleep = _require(obj, "sleep_hours", path)
    if isinstance(sleep, bool) or not isinstance(sleep, (int, float)):
        raise SchemaError(f"expected number at {path}.sleep_hours", f"{path}.sleep_hours")
    if sleep < 0:
        raise RangeError(f"{path}.sleep_hours = {sleep} is negative", f"{path}.sleep_hours")
    return BiometricDay(
        entry_id=_entry_id(obj, path, require_id),
        date=parse_date(_require(obj, "date", path), f"{path}.date"),
        sleep_hours=float(sleep),
        resting_heart_rate_bpm=_int_range(obj, "resting_heart_rate_bpm", path, 1, None),
        activity_steps=_int_range(obj, "activity_steps", path, 0, None),
        mindfulness_minutes=_int_range(obj, "mindfulness_minutes", path, 0, None),
    )


def parse_goal(raw: Any, path: str, require_id: bool = True) -> TherapyGoal:
    obj = _obj(raw, path)
    return TherapyGoal(
        goal_id=_entry_id(obj, path, require_id, id_key="goal_id"),
        text=_str(obj, "text", path),
        created_at=parse_ts(_require(obj, "created_at", path), f"{path}.created_at"),
        status=_enum(obj, "status", path, GoalStatus),
    )


def parse_message(raw: Any, path: str, require_id: bool = True) -> Message:
    obj = _obj(raw, path)
    return Message(
        message_id=_entry_id(obj, path, require_id, id_key="message_id"),
        sent_at=parse_ts(_require(obj, "sent_at", path), f"{path}.sent_at"),
        direction=_enum(obj, "direction", path, MessageDirection),
        text=_str(obj, "text", path),
    )


def parse_reading_status(raw: Any, path: str) -> ReadingStatus:
    obj = _obj(raw, path)
    lists = {}
    for key in ("finished", "not_finished"):
        values = obj.get(key, [])
        if not isinstance(values, list) or not all(
            isinstance(v, str) and v.strip() for v in values
        ):
            raise SchemaError(
                f"expected list of non-empty titles at {path}.{key}", f"{path}.{key}"
            )
        lists[key] = tuple(values)
    overlap = set(lists["finished"]) & set(lists["not_finished"])
    if overlap:
        raise SchemaError(
            f"titles cannot be both finished and not finished at {path}: {sorted(overlap)}",
            path,
        )
    return ReadingStatus(finished=lists["finished"], not_finished=lists["not_finished"])


_ENTRY_PARSERS = {
    "submission": parse_submission,
    "emotion_log": parse_emotion_log,
    "activity_log": parse_activity_log,
    "assessment": parse_assessment,
    "biometric_day": parse_biometric_day,
    "goal": parse_goal,
    "message": parse_message,
}


def parse_entry_payload(kind: str, payload: Any) -> Entry:
    """Ingest-path parser: builds an entry from an API payload, entry id left
    blank for the store to assign. Raises ValidationError on any defect."""
    for hw_type in HomeworkType:
        if kind == hw_type.value:
            payload = dict(_obj(payload, "$"))
            payload.setdefault("homework_type", kind)
            kind = "submission"
            break
    parser = _ENTRY_PARSERS.get(kind)
    if parser is None:
        raise ValidationError(f"unknown entry kind {kind!r}", "$.kind")
    try:
        return parser(payload, "$", require_id=False)
    except (SchemaError, RangeError) as exc:
        raise ValidationError(exc.message, exc.path) from exc


# ---------------------------------------------------------------------------
# Whole-document load / serialize
# ---------------------------------------------------------------------------

_COLLECTIONS = (
    ("submissions", parse_submission),
    ("emotion_logs", parse_emotion_log),
    ("activity_logs", parse_activity_log),
    ("assessments", parse_assessment),
    ("biometric_days", parse_biometric_day),
    ("goals", parse_goal),
    ("messages", parse_message),
)


def validate_and_load(raw_document: str) -> ClientRecord:
    """Parse canonical-JSON text into a ClientRecord or raise a typed error."""
    try:
        doc = json.loads(raw_document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"document is not valid JSON: {exc}", "$") from exc
    obj = _obj(doc, "$")
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"$.schema_version must be {SCHEMA_VERSION}, got {version!r}", "$.schema_version"
        )
    record_id = _str(obj, "record_id", "$")
    client_label = _str(obj, "client_label", "$", allow_empty=True)

    parsed: dict[str, tuple] = {}
    for key, parser in _COLLECTIONS:
        entries = []
        for i, raw_entry in enumerate(_list(obj, key, "$")):
            entries.append(parser(raw_entry, f"$.{key}[{i}]"))
        entries.sort(key=lambda e: (e.occurred_at, e.entry_id))
        parsed[key] = tuple(entries)

    reading = ReadingStatus()
    if "reading_materials" in obj:
        reading = parse_reading_status(obj["reading_materials"], "$.reading_materials")

    record = ClientRecord(
        record_id=record_id,
        client_label=client_label,
        reading_materials=reading,
        entry_seq=obj.get("entry_seq", 0) if isinstance(obj.get("entry_seq", 0), int) else 0,
        **parsed,
    )
    _check_record_invariants(record)
    return record


def _check_record_invariants(record: ClientRecord) -> None:
    seen: set[str] = set()
    for entry in record.iter_entries():
        if entry.entry_id in seen:
            raise DuplicateIdError(f"duplicate entry_id {entry.entry_id!r}")
        seen.add(entry.entry_id)
    seen_dates: set[date] = set()
    for day in record.biometric_days:
        if day.date in seen_dates:
            raise SchemaError(
                f"more than one biometric day for {day.date.isoformat()}",
                "$.biometric_days",
            )
        seen_dates.add(day.date)


def entry_to_dict(entry) -> dict:
    if isinstance(entry, HomeworkSubmission):
        body: Any
        if isinstance(entry.body, ThoughtRecord):
            body = {
                "trigger_situation": entry.body.trigger_situation,
                "automatic_thought": entry.body.automatic_thought,
                "rational_response": entry.body.rational_response,
            }
            if entry.body.evidence is not None:
                body["evidence"] = entry.body.evidence
        else:
            body = entry.body
        out = {
            "entry_id": entry.entry_id,
            "submitted_at": format_ts(entry.submitted_at),
            "homework_type": entry.homework_type.value,
            "duration_minutes": entry.duration_minutes,
            "self_rated_quality": entry.self_rated_quality,
            "mood_before": entry.mood_before,
            "mood_after": entry.mood_after,
            "body": body,
        }
        if entry.type_label is not None:
            out["type_label"] = entry.type_label
        return out
    if isinstance(entry, EmotionLog):
        return {
            "entry_id": entry.entry_id,
            "date": entry.date.isoformat(),
            "interval": entry.interval.value,
            "descriptor": entry.descriptor.value,
        }
    if isinstance(entry, ActivityLog):
        return {
            "entry_id": entry.entry_id,
            "date": entry.date.isoformat(),
            "block": entry.block.value,
            "description": entry.description,
        }
    if isinstance(entry, AssessmentResult):
        out = {
            "entry_id": entry.entry_id,
            "administered_at": format_ts(entry.administered_at),
            "instrument": entry.instrument.value,
            "items": [{"text": i.text, "score": i.score} for i in entry.items],
            "total": entry.total,
            "thresholds": {
                "items": list(entry.thresholds.items),
                "total": entry.thresholds.total,
            },
        }
        if entry.instrument_label is not None:
            out["instrument_label"] = entry.instrument_label
        return out
    if isinstance(entry, BiometricDay):
        return {
            "entry_id": entry.entry_id,
            "date": entry.date.isoformat(),
            "sleep_hours": entry.sleep_hours,
            "resting_heart_rate_bpm": entry.resting_heart_rate_bpm,
            "activity_steps": entry.activity_steps,
            "mindfulness_minutes": entry.mindfulness_minutes,
        }
    if isinstance(entry, TherapyGoal):
        return {
            "goal_id": entry.goal_id,
            "text": entry.text,
            "created_at": format_ts(entry.created_at),
            "status": entry.status.value,
        }
    if isinstance(entry, Message):
        return {
            "message_id": entry.message_id,
            "sent_at": format_ts(entry.sent_at),
            "direction": entry.direction.value,
            "text": entry.text,
        }
    if isinstance(entry, ReadingStatus):
        return {"finished": list(entry.finished), "not_finished": list(entry.not_finished)}
    raise TypeError(f"not a serializable entry: {type(entry).__name__}")


def record_to_document(record: ClientRecord) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "record_id": record.record_id,
        "client_label": record.client_label,
        "entry_seq": record.entry_seq,
        "submissions": [entry_to_dict(e) for e in record.submissions],
        "emotion_logs": [entry_to_dict(e) for e in record.emotion_logs],
        "activity_logs": [entry_to_dict(e) for e in record.activity_logs],
        "assessments": [entry_to_dict(e) for e in record.assessments],
        "biometric_days": [entry_to_dict(e) for e in record.biometric_days],
        "reading_materials": entry_to_dict(record.reading_materials),
        "goals": [entry_to_dict(e) for e in record.goals],
        "messages": [entry_to_dict(e) for e in record.messages],
    }


def serialize(record: ClientRecord) -> str:
    return json.dumps(record_to_document(record), indent=2, ensure_ascii=False) + "\n"


def entry_digest(entry) -> str:
    """Content hash of an entry's canonical serialization (anchor staleness)."""
    return sha256_hex(canonical_json(entry_to_dict(entry)))


def record_digest(record: ClientRecord) -> str:
    return sha256_hex(canonical_json(record_to_document(record)))


def with_collection(record: ClientRecord, entry: Entry, entries: tuple) -> ClientRecord:
    """Return a copy of ``record`` with the collection containing ``entry``
    replaced by ``entries`` (sorted)."""
    field_by_type = {
        HomeworkSubmission: "submissions",
        EmotionLog: "emotion_logs",
        ActivityLog: "activity_logs",
        AssessmentResult: "assessments",
        BiometricDay: "biometric_days",
        TherapyGoal: "goals",
        Message: "messages",
    }
    field_name = field_by_type[type(entry)]
    ordered = tuple(sorted(entries, key=lambda e: (e.occurred_at, e.entry_id)))
    return replace(record, **{field_name: ordered})
