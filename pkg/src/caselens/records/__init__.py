from .entities import (
    ActivityBlock,
    ActivityLog,
    AssessmentItem,
    AssessmentResult,
    BiometricDay,
    ClientRecord,
    EmotionDescriptor,
    EmotionInterval,
    Entry,
    GoalStatus,
    HomeworkSubmission,
    HomeworkType,
    Instrument,
    Message,
    MessageDirection,
    ReadingStatus,
    READING_ENTRY_ID,
    TherapyGoal,
    ThoughtRecord,
    Thresholds,
)
from .documents import (
    entry_digest,
    entry_to_dict,
    parse_entry_payload,
    record_digest,
    record_to_document,
    serialize,
    validate_and_load,
)
from .store import RecordStore

__all__ = [
    "ActivityBlock",
    "ActivityLog",
    "AssessmentItem",
    "AssessmentResult",
    "BiometricDay",
    "ClientRecord",
    "EmotionDescriptor",
    "EmotionInterval",
    "Entry",
    "GoalStatus",
    "HomeworkSubmission",
    "HomeworkType",
    "Instrument",
    "Message",
    "MessageDirection",
    "ReadingStatus",
    "READING_ENTRY_ID",
    "RecordStore",
    "TherapyGoal",
    "ThoughtRecord",
    "Thresholds",
    "entry_digest",
    "entry_to_dict",
    "parse_entry_payload",
    "record_digest",
    "record_to_document",
    "serialize",
    "validate_and_load",
]
