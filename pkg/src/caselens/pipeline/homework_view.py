"""Frequency-controlled homework text for prompt context.

The therapist's homework_summary preference decides how much of the homework
stream reaches the model: per-day aggregates, week-level pattern lines, or a
bare presence statement. Daily and none views never copy submission bodies;
only the weekly/daily aggregates (counts, types, mood deltas, minutes) leak
into the prompt.
"""

from __future__ import annotations

from collections import defaultdict
from datetime import date

from ..analytics import iso_week_key
from ..dashboard import HomeworkSummaryFrequency
from ..records.entities import HomeworkSubmission
from .bundle import ContextLine

SUBMITTED_LINE = "Homework was submitted in this window."
NOT_SUBMITTED_LINE = "No homework was submitted in this window."


def _type_counts(subs: list[HomeworkSubmission]) -> str:
    counts: dict[str, int] = defaultdict(int)
    for sub in subs:
        counts[sub.homework_type.value] += 1
    return ", ".join(
        f"{name} x{n}" if n > 1 else name for name, n in sorted(counts.items())
    )


def _mean_delta(subs: list[HomeworkSubmission]) -> float:
    return sum(s.mood_delta for s in subs) / len(subs)


def daily_lines(submissions: list[HomeworkSubmission], tag: str = "") -> list[ContextLine]:
    by_day: dict[date, list[HomeworkSubmission]] = defaultdict(list)
    for sub in submissions:
        by_day[sub.submitted_at.date()].append(sub)
    prefix = f"[{tag}] " if tag else ""
    lines = []
    for day in sorted(by_day):
        subs = by_day[day]
        total_minutes = sum(s.duration_minutes for s in subs)
        noun = "submission" if len(subs) == 1 else "submissions"
        lines.append(
            ContextLine(
                text=(
                    f"{prefix}{day.isoformat()}: {len(subs)} {noun} ({_type_counts(subs)}); "
                    f"mean mood delta {_mean_delta(subs):+.2f}; total {total_minutes} min"
                ),
                source_ids=tuple(s.entry_id for s in subs),
            )
        )
    return lines


def weekly_lines(submissions: list[HomeworkSubmission], tag: str = "") -> list[ContextLine]:
    by_week: dict[str, list[HomeworkSubmission]] = defaultdict(list)
    for sub in submissions:
        by_week[iso_week_key(sub.submitted_at.date())].append(sub)
    prefix = f"[{tag}] " if tag else ""
    lines = []
    for week in sorted(by_week):
        subs = by_week[week]
        days_active = len({s.submitted_at.date() for s in subs})
        noun = "submission" if len(subs) == 1 else "submissions"
        lines.append(
            ContextLine(
                text=(
                    f"{prefix}{week}: {len(subs)} {noun} on {days_active} day(s) "
                    f"({_type_counts(subs)}); mean mood delta {_mean_delta(subs):+.2f}"
                ),
                source_ids=tuple(s.entry_id for s in subs),
            )
        )
    return lines


def presence_line(submissions: list[HomeworkSubmission]) -> list[ContextLine]:
    if submissions:
        return [
            ContextLine(
                text=SUBMITTED_LINE, source_ids=tuple(s.entry_id for s in submissions)
            )
        ]
    return [ContextLine(text=NOT_SUBMITTED_LINE)]


def homework_view(
    submissions: list[HomeworkSubmission],
    frequency: HomeworkSummaryFrequency,
    tag: str = "",
) -> list[ContextLine]:
    """Render submissions at the configured granularity. The none view is
    always exactly one line; daily/weekly views are empty for no submissions
    (callers render "No data")."""
    if frequency is HomeworkSummaryFrequency.NONE:
        return presence_line(submissions)
    if frequency is HomeworkSummaryFrequency.DAILY:
        return daily_lines(submissions, tag)
    return weekly_lines(submissions, tag)
