"""Time windows for context retrieval.

The recent scope covers the last seven days; the comparative scope pairs two
adjacent seven-day windows ending now, supporting week-over-week questions.
The summary path looks back four weeks so weekly patterns have material to
work with. Short histories simply intersect with the window; nothing is
back-filled.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

RECENT_WINDOW_DAYS = 7
SUMMARY_WINDOW_DAYS = 28


@dataclass(frozen=True)
class TimeWindow:
    start: datetime
    end: datetime
    end_exclusive: bool = False
    tag: str = ""

    def contains(self, at: datetime) -> bool:
        if at < self.start:
            return False
        return at < self.end if self.end_exclusive else at <= self.end


def now_utc() -> datetime:
    return datetime.now(timezone.utc)


def recent_window(as_of: datetime) -> TimeWindow:
    return TimeWindow(start=as_of - timedelta(days=RECENT_WINDOW_DAYS), end=as_of)


def comparative_windows(as_of: datetime) -> tuple[TimeWindow, TimeWindow]:
    pivot = as_of - timedelta(days=RECENT_WINDOW_DAYS)
    previous = TimeWindow(
        start=as_of - timedelta(days=2 * RECENT_WINDOW_DAYS),
        end=pivot,
        end_exclusive=True,
        tag="previous week",
    )
    current = TimeWindow(start=pivot, end=as_of, tag="current week")
    return previous, current


def summary_window(as_of: datetime) -> TimeWindow:
    return TimeWindow(start=as_of - timedelta(days=SUMMARY_WINDOW_DAYS), end=as_of)
