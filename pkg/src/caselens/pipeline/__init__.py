from .bundle import ContextBundle, ContextLine
from .classifier import (
    MatchedRule,
    QuestionCategory,
    QuestionScope,
    RoutingExplanation,
    classify,
    explain_routing,
)
from .prompts import PromptDocument, build_chat_prompt, build_summary_prompt
from .retrieval import (
    CATEGORY_KINDS,
    FOCUS_HOMEWORK_TYPES,
    ChatRequest,
    SummaryRequest,
    entry_matches_focus,
    retrieve,
)
from .windows import (
    RECENT_WINDOW_DAYS,
    SUMMARY_WINDOW_DAYS,
    TimeWindow,
    comparative_windows,
    recent_window,
    summary_window,
)

__all__ = [
    "CATEGORY_KINDS",
    "ChatRequest",
    "ContextBundle",
    "ContextLine",
    "FOCUS_HOMEWORK_TYPES",
    "MatchedRule",
    "PromptDocument",
    "QuestionCategory",
    "QuestionScope",
    "RECENT_WINDOW_DAYS",
    "RoutingExplanation",
    "SUMMARY_WINDOW_DAYS",
    "SummaryRequest",
    "TimeWindow",
    "build_chat_prompt",
    "build_summary_prompt",
    "classify",
    "comparative_windows",
    "entry_matches_focus",
    "explain_routing",
    "recent_window",
    "retrieve",
    "summary_window",
]
