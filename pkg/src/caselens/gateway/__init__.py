from .contracts import (
    INSUFFICIENT_TEXT,
    NO_DATA,
    NO_FOCUS_DATA_TEXT,
    NO_SUMMARY_TEXT,
    OPTIONAL_SUMMARY_HEADER,
    RAW_DATA_TITLE,
    SUGGESTION_DISCLAIMER,
    SUMMARY_HEADERS,
)
from .params import CHAT_PARAMS, PRODUCTION_TEMPERATURE, SUMMARY_PARAMS, InferenceParams
from .providers import (
    CallLog,
    CallRecord,
    CompletionProvider,
    Gateway,
    MockProvider,
    RemoteProvider,
    provider_from_env,
)
from .validators import (
    ChatAnswer,
    ChatValidationContext,
    SummaryDocument,
    SummarySection,
    Violation,
    ViolationList,
    sentence_count,
    validate_chat,
    validate_summary,
)

__all__ = [
    "CHAT_PARAMS",
    "CallLog",
    "CallRecord",
    "ChatAnswer",
    "ChatValidationContext",
    "CompletionProvider",
    "Gateway",
    "INSUFFICIENT_TEXT",
    "InferenceParams",
    "MockProvider",
    "NO_DATA",
    "NO_FOCUS_DATA_TEXT",
    "NO_SUMMARY_TEXT",
    "OPTIONAL_SUMMARY_HEADER",
    "PRODUCTION_TEMPERATURE",
    "RAW_DATA_TITLE",
    "RemoteProvider",
    "SUGGESTION_DISCLAIMER",
    "SUMMARY_HEADERS",
    "SUMMARY_PARAMS",
    "SummaryDocument",
    "SummarySection",
    "Violation",
    "ViolationList",
    "provider_from_env",
    "sentence_count",
    "validate_chat",
    "validate_summary",
]
