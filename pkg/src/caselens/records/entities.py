"""Domain entities for the canonical client record.

All timestamps are stored timezone-aware in UTC; date-only entries sort by a
deterministic representative time of day so that entry ordering is total.
Entities are frozen; edits go through ``dataclasses.replace`` in the store.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import date, datetime, time, timezone
from enum import Enum
from typing import Iterator, Union


class HomeworkType(str, Enum):
    THOUGHT_RECORD = "thought_record"
    JOURNALING = "journaling"
    GRATITUDE_JOURNAL = "gratitude_journal"
    MOOD_TRACKING = "mood_tracking"
    RELAXATION_BREATHING = "relaxation_breathing"
    BEHAVIORAL_EXPERIMENT = "behavioral_experiment"
    ACTIVITY_SCHEDULING = "activity_scheduling"
    EXPOSURE_TASK = "exposure_task"
    MINDFULNESS_PRACTICE = "mindfulness_practice"
    OTHER = "other"


class EmotionInterval(str, Enum):
    """Six 4-hour slots; the four daytime slots cover waking hours, the two
    night slots exist in the schema but are normally unused."""

    H06_10 = "6am-10am"
    H10_14 = "10am-2pm"
    H14_18 = "2pm-6pm"
    H18_22 = "6pm-10pm"
    H22_02 = "10pm-2am"
    H02_06 = "2am-6am"


_INTERVAL_START_HOUR = {
    EmotionInterval.H06_10: 6,
    EmotionInterval.H10_14: 10,
    EmotionInterval.H14_18: 14,
    EmotionInterval.H18_22: 18,
    EmotionInterval.H22_02: 22,
    EmotionInterval.H02_06: 2,
}


class EmotionDescriptor(str, Enum):
    ENERGETIC = "Energetic"
    OVERWHELMED = "Overwhelmed"
    SLEEPY = "Sleepy"
    ENTHUSIASTIC = "Enthusiastic"
    BORED = "Bored"
    RELAXED = "Relaxed"


class ActivityBlock(str, Enum):
    MORNING = "Morning"
    AFTERNOON = "Afternoon"
    NIGHT = "Night"


_BLOCK_HOUR = {
    ActivityBlock.MORNING: 8,
    ActivityBlock.AFTERNOON: 14,
    ActivityBlock.NIGHT: 20,
}


class Instrument(str, Enum):
    GAD7 = "GAD7"
    PHQ9 = "PHQ9"
    PCL = "PCL"
    OCIR = "OCIR"
    OTHER = "other"


class GoalStatus(str, Enum):
    ACTIVE = "active"
    ACHIEVED = "achieved"
    REVISED = "revised"


class MessageDirection(str, Enum):
    TO_CLIENT = "to_client"
    FROM_CLIENT = "from_client"


# Entry kind tags used in filters, anchors, and the category -> kind map.
KIND_EMOTION = "emotion_log"
KIND_ACTIVITY = "activity_log"
KIND_ASSESSMENT = "assessment"
KIND_BIOMETRIC = "biometric_day"
KIND_GOAL = "goal"
KIND_MESSAGE = "message"
KIND_READING = "reading_status"
# Umbrella tag matching any homework submission regardless of type.
KIND_SUBMISSION = "submission"

SUBMISSION_KINDS = frozenset(t.value for t in HomeworkType)
ALL_ENTRY_KINDS = SUBMISSION_KINDS | {
    KIND_SUBMISSION,
    KIND_EMOTION,
    KIND_ACTIVITY,
    KIND_ASSESSMENT,
    KIND_BIOMETRIC,
    KIND_GOAL,
    KIND_MESSAGE,
}

# The reading list is record-level state, not a dated entry; it still gets a
# stable pseudo entry id so provenance anchors over it resolve.
READING_ENTRY_ID = "reading-status"


def _utc(d: date, hour: int) -> datetime:
    return datetime.combine(d, time(hour=hour), tzinfo=timezone.utc)


@dataclass(frozen=True)
class ThoughtRecord:
    trigger_situation: str
    automatic_thought: str
    rational_response: str
    evidence: str | None = None


@dataclass(frozen=True)
class HomeworkSubmission:
    entry_id: str
    submitted_at: datetime
    homework_type: HomeworkType
    duration_minutes: int
    self_rated_quality: int
    mood_before: int
    mood_after: int
    body: Union[str, ThoughtRecord]
    type_label: str | None = None  # required iff homework_type == OTHER

    @property
    def kind(self) -> str:
        return self.homework_type.value

    @property
    def occurred_at(self) -> datetime:
        return self.submitted_at

    @property
    def mood_delta(self) -> int:
        return self.mood_after - self.mood_before

    def body_text(self) -> str:
        if isinstance(self.body, ThoughtRecord):
            parts = [self.body.trigger_situation, self.body.automatic_thought]
            if self.body.evidence:
                parts.append(self.body.evidence)
            parts.append(self.body.rational_response)
            return " ".join(parts)
        return self.body


@dataclass(frozen=True)
class EmotionLog:
    entry_id: str
    date: date
    interval: EmotionInterval
    descriptor: EmotionDescriptor

    kind = KIND_EMOTION

    @property
    def occurred_at(self) -> datetime:
        return _utc(self.date, _INTERVAL_START_HOUR[self.interval])


@dataclass(frozen=True)
class ActivityLog:
    entry_id: str
    date: date
    block: ActivityBlock
    description: str

    kind = KIND_ACTIVITY

    @property
    def occurred_at(self) -> datetime:
        return _utc(self.date, _BLOCK_HOUR[self.block])


@dataclass(frozen=True)
class AssessmentItem:
    text: str
    score: int


@dataclass(frozen=True)
class Thresholds:
    items: tuple[int, ...] = ()
    total: int | None = None


@dataclass(frozen=True)
class AssessmentResult:
    entry_id: str
    administered_at: datetime
    instrument: Instrument
    items: tuple[AssessmentItem, ...]
    total: int
    thresholds: Thresholds = field(default_factory=Thresholds)
    instrument_label: str | None = None  # required iff instrument == OTHER

    kind = KIND_ASSESSMENT

    @property
    def occurred_at(self) -> datetime:
        return self.administered_at


@dataclass(frozen=True)
class BiometricDay:
    entry_id: str
    date: date
    sleep_hours: float
    resting_heart_rate_bpm: int
    activity_steps: int
    mindfulness_minutes: int

    kind = KIND_BIOMETRIC

    @property
    def occurred_at(self) -> datetime:
        return _utc(self.date, 0)


@dataclass(frozen=True)
class ReadingStatus:
    finished: tuple[str, ...] = ()
    not_finished: tuple[str, ...] = ()

    kind = KIND_READING
    entry_id = READING_ENTRY_ID

    def is_empty(self) -> bool:
        return not self.finished and not self.not_finished


@dataclass(frozen=True)
class TherapyGoal:
    goal_id: str
    text: str
    created_at: datetime
    status: GoalStatus

    kind = KIND_GOAL

    @property
    def entry_id(self) -> str:
        return self.goal_id

    @property
    def occurred_at(self) -> datetime:
        return self.created_at


@dataclass(frozen=True)
class Message:
    message_id: str
    sent_at: datetime
    direction: MessageDirection
    text: str

    kind = KIND_MESSAGE

    @property
    def entry_id(self) -> str:
        return self.message_id

    @property
    def occurred_at(self) -> datetime:
        return self.sent_at


Entry = Union[
    HomeworkSubmission,
    EmotionLog,
    ActivityLog,
    AssessmentResult,
    BiometricDay,
    TherapyGoal,
    Message,
]

AnchorableEntry = Union[Entry, ReadingStatus]


def _sort_key(entry: Entry) -> tuple:
    return (entry.occurred_at, entry.entry_id)


@dataclass(frozen=True)
class ClientRecord:
    record_id: str
    client_label: str
    submissions: tuple[HomeworkSubmission, ...] = ()
    emotion_logs: tuple[EmotionLog, ...] = ()
    activity_logs: tuple[ActivityLog, ...] = ()
    assessments: tuple[AssessmentResult, ...] = ()
    biometric_days: tuple[BiometricDay, ...] = ()
    reading_materials: ReadingStatus = field(default_factory=ReadingStatus)
    goals: tuple[TherapyGoal, ...] = ()
    messages: tuple[Message, ...] = ()
    entry_seq: int = 0

    def iter_entries(self) -> Iterator[Entry]:
        """All dated entries in ascending (occurred_at, entry_id) order."""
        entries: list[Entry] = [
            *self.submissions,
            *self.emotion_logs,
            *self.activity_logs,
            *self.assessments,
            *self.biometric_days,
            *self.goals,
            *self.messages,
        ]
        entries.sort(key=_sort_key)
        return iter(entries)

    def entry_by_id(self, entry_id: str) -> AnchorableEntry | None:
        if entry_id == READING_ENTRY_ID:
            return self.reading_materials
        for entry in self.iter_entries():
            if entry.entry_id == entry_id:
                return entry
        return None


def entry_matches_kind(entry: Entry, kinds: frozenset[str] | set[str]) -> bool:
    if entry.kind in kinds:
        return True
    return isinstance(entry, HomeworkSubmission) and KIND_SUBMISSION in kinds


def canonical_json(payload) -> str:
    """Compact, key-sorted JSON used for digests and excerpt hashes."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
