from .chat import AnchoredChatAnswer, ChatEngine
from .summary import AnchoredSummary, SummaryEngine, summary_frequency_view

__all__ = [
    "AnchoredChatAnswer",
    "AnchoredSummary",
    "ChatEngine",
    "SummaryEngine",
    "summary_frequency_view",
]
