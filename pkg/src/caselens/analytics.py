"""Glanceable progress analytics: completion trends, streaks, mood deltas,
assessment severity bands, and biometric aggregates.

Everything here is a pure function of (record, window); windows are inclusive
calendar-date ranges. Degenerate windows (end before start) yield empty/zero
results rather than errors. Per-item severity uses strict exceedance (score
must be strictly greater than its threshold); the total band is named by what
it measures, at-or-above the total cutoff. Decimal means stay unrounded
internally and render at two decimal places.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta

from .errors import ThresholdMismatch
from .records.entities import (
    AssessmentResult,
    BiometricDay,
    ClientRecord,
    HomeworkSubmission,
    HomeworkType,
    ReadingStatus,
)

DateWindow = tuple[date, date]

NO_DATA = "No data"


def iso_week_key(day: date) -> str:
    year, week, _ = day.isocalendar()
    return f"{year}-W{week:02d}"


def days_in_window(window: DateWindow) -> list[date]:
    start, end = window
    if end < start:
        return []
    return [start + timedelta(days=i) for i in range((end - start).days + 1)]


def submissions_in_window(
    record: ClientRecord,
    window: DateWindow,
    homework_type: HomeworkType | None = None,
) -> list[HomeworkSubmission]:
    start, end = window
    out = []
    for sub in record.submissions:
        day = sub.submitted_at.date()
        if day < start or day > end:
            continue
        if homework_type is not None and sub.homework_type is not homework_type:
            continue
        out.append(sub)
    return out


@dataclass(frozen=True)
class CompletionSeries:
    window: DateWindow
    per_day: dict[date, int]
    per_week: dict[str, int]
    per_type: dict[str, int]
    longest_streak: int
    current_streak: int
    gaps: list[tuple[date, date]]


def completion_trend(record: ClientRecord, window: DateWindow) -> CompletionSeries:
    days = days_in_window(window)
    per_day = {day: 0 for day in days}
    per_type: dict[str, int] = {}
    for sub in submissions_in_window(record, window):
        per_day[sub.submitted_at.date()] += 1
        per_type[sub.homework_type.value] = per_type.get(sub.homework_type.value, 0) + 1

    per_week: dict[str, int] = {}
    for day, count in per_day.items():
        key = iso_week_key(day)
        per_week[key] = per_week.get(key, 0) + count

    longest = current = 0
    run = 0
    for day in days:
        if per_day[day] > 0:
            run += 1
            longest = max(longest, run)
        else:
            run = 0
    current = run  # run survives only if it reaches the window end

    gaps: list[tuple[date, date]] = []
    gap_start: date | None = None
    for day in days:
        if per_day[day] == 0:
            if gap_start is None:
                gap_start = day
        elif gap_start is not None:
            gaps.append((gap_start, day - timedelta(days=1)))
            gap_start = None
    if gap_start is not None:
        gaps.append((gap_start, days[-1]))

    return CompletionSeries(
        window=window,
        per_day=per_day,
        per_week=per_week,
        per_type=per_type,
        longest_streak=longest,
        current_streak=current,
        gaps=gaps,
    )


@dataclass(frozen=True)
class MoodDeltaPoint:
    submitted_at: str  # UTC timestamp text, keeps the series serialization-stable
    homework_type: str
    mood_before: int
    mood_after: int
    delta: int


def mood_delta_series(
    record: ClientRecord,
    window: DateWindow,
    homework_type: HomeworkType | None = None,
) -> list[MoodDeltaPoint]:
    from .records.documents import format_ts

    return [
        MoodDeltaPoint(
            submitted_at=format_ts(sub.submitted_at),
            homework_type=sub.homework_type.value,
            mood_before=sub.mood_before,
            mood_after=sub.mood_after,
            delta=sub.mood_after - sub.mood_before,
        )
        for sub in submissions_in_window(record, window, homework_type)
    ]


@dataclass(frozen=True)
class ItemSeverity:
    text: str
    score: int
    threshold: int | None
    exceeded: bool
    color_hint: str


@dataclass(frozen=True)
class SeverityBands:
    items: tuple[ItemSeverity, ...]
    total: int
    total_threshold: int | None
    total_band: str  # "below" | "at_or_above"
    total_color_hint: str


def assessment_severity(result: AssessmentResult) -> SeverityBands:
    thresholds = result.thresholds
    if thresholds.items and len(thresholds.items) != len(result.items):
        raise ThresholdMismatch(
            f"{len(thresholds.items)} thresholds for {len(result.items)} items"
        )
    items = []
    for i, item in enumerate(result.items):
        threshold = thresholds.items[i] if thresholds.items else None
        exceeded = threshold is not None and item.score > threshold
        items.append(
            ItemSeverity(
                text=item.text,
                score=item.score,
                threshold=threshold,
                exceeded=exceeded,
                color_hint="elevated" if exceeded else "normal",
            )
        )
    at_or_above = thresholds.total is not None and result.total >= thresholds.total
    return SeverityBands(
        items=tuple(items),
        total=result.total,
        total_threshold=thresholds.total,
        total_band="at_or_above" if at_or_above else "below",
        total_color_hint="elevated" if at_or_above else "normal",
    )


_METRICS = (
    ("sleep_hours", "hours", False),
    ("resting_heart_rate_bpm", "bpm", True),
    ("activity_steps", "steps", True),
    ("mindfulness_minutes", "minutes", True),
)


@dataclass(frozen=True)
class MetricStats:
    mean: float
    min: float
    max: float


@dataclass(frozen=True)
class BiometricAggregates:
    window: DateWindow
    day_count: int
    stats: dict[str, MetricStats]  # empty when no data
    text_block: str  # fixed line format, or exactly "No data"


def aggregate_biometric_days(days: list[BiometricDay]) -> tuple[dict[str, MetricStats], str]:
    """Fold a list of biometric days into per-metric stats and the fixed
    one-line-per-metric text block ("No data" for an empty list)."""
    if not days:
        return {}, NO_DATA
    stats: dict[str, MetricStats] = {}
    lines = []
    for name, unit, integral in _METRICS:
        values = [getattr(d, name) for d in days]
        stat = MetricStats(mean=sum(values) / len(values), min=min(values), max=max(values))
        stats[name] = stat
        lo = f"{int(stat.min)}" if integral else f"{stat.min:.2f}"
        hi = f"{int(stat.max)}" if integral else f"{stat.max:.2f}"
        lines.append(f"{name}: mean {stat.mean:.2f} (min {lo} – max {hi}) {unit}")
    return stats, "\n".join(lines)


def biometric_aggregate(record: ClientRecord, window: DateWindow) -> BiometricAggregates:
    start, end = window
    days = [d for d in record.biometric_days if start <= d.date <= end]
    stats, text_block = aggregate_biometric_days(days)
    return BiometricAggregates(
        window=window, day_count=len(days), stats=stats, text_block=text_block
    )


def reading_overview(record: ClientRecord) -> ReadingStatus:
    return record.reading_materials
