"""Scope- and preference-driven context retrieval.

The chat path filters entries by the classified category's entry kinds and
the scope window; the summary path takes everything in the four-week window
at the granularity the homework_summary preference allows. Retrieval records
the exact entry set it used, so downstream anchoring can only cite what the
model actually saw. Bundles cap at 200 entries, most recent kept.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from datetime import date, datetime

from ..analytics import aggregate_biometric_days
from ..dashboard import FocusArea, HomeworkSummaryFrequency, OnboardingConfig
from ..errors import UnknownRecord
from ..records.entities import (
    ActivityLog,
    AssessmentResult,
    BiometricDay,
    ClientRecord,
    EmotionLog,
    Entry,
    HomeworkSubmission,
    HomeworkType,
    KIND_ACTIVITY,
    KIND_ASSESSMENT,
    KIND_BIOMETRIC,
    KIND_EMOTION,
    KIND_GOAL,
    KIND_SUBMISSION,
    TherapyGoal,
    entry_matches_kind,
)
from .bundle import ContextBundle, ContextLine
from .classifier import QuestionCategory, QuestionScope
from .homework_view import daily_lines, homework_view
from .windows import (
    TimeWindow,
    comparative_windows,
    now_utc,
    recent_window,
    summary_window,
)

MAX_BUNDLE_ENTRIES = 200

JOURNALING_TYPES = frozenset(
    {
        HomeworkType.JOURNALING.value,
        HomeworkType.THOUGHT_RECORD.value,
        HomeworkType.GRATITUDE_JOURNAL.value,
    }
)

_ALL_EVIDENCE_KINDS = frozenset(
    {KIND_SUBMISSION, KIND_EMOTION, KIND_ACTIVITY, KIND_ASSESSMENT, KIND_BIOMETRIC, KIND_GOAL}
)

# Question category -> entry kinds considered evidence (docs/retrieval.md).
CATEGORY_KINDS: dict[QuestionCategory, frozenset[str]] = {
    QuestionCategory.JOURNALING: JOURNALING_TYPES,
    QuestionCategory.HOMEWORK: frozenset({KIND_SUBMISSION}),
    QuestionCategory.BIOMETRIC: frozenset({KIND_BIOMETRIC}),
    QuestionCategory.RISK: _ALL_EVIDENCE_KINDS,
    QuestionCategory.SUGGESTION: _ALL_EVIDENCE_KINDS,
    QuestionCategory.GENERAL: _ALL_EVIDENCE_KINDS,
}

# Focus area -> homework types it emphasizes (docs/retrieval.md).
FOCUS_HOMEWORK_TYPES: dict[FocusArea, frozenset[HomeworkType]] = {
    FocusArea.COGNITIVE_RESTRUCTURING: frozenset(
        {HomeworkType.THOUGHT_RECORD, HomeworkType.BEHAVIORAL_EXPERIMENT}
    ),
    FocusArea.MINDFULNESS: frozenset(
        {HomeworkType.MINDFULNESS_PRACTICE, HomeworkType.RELAXATION_BREATHING}
    ),
    FocusArea.BEHAVIORAL_ACTIVATION: frozenset(
        {HomeworkType.ACTIVITY_SCHEDULING, HomeworkType.BEHAVIORAL_EXPERIMENT}
    ),
    FocusArea.EXPOSURE_THERAPY: frozenset({HomeworkType.EXPOSURE_TASK}),
    FocusArea.JOURNALING_THOUGHT_RECORDS: frozenset(
        {HomeworkType.JOURNALING, HomeworkType.THOUGHT_RECORD, HomeworkType.GRATITUDE_JOURNAL}
    ),
}


@dataclass(frozen=True)
class ChatRequest:
    question: str
    question_category: QuestionCategory
    question_scope: QuestionScope


@dataclass(frozen=True)
class SummaryRequest:
    """Pure control signal: no free-text query rides along."""

    record_id: str
    activate: bool = True


def entry_matches_focus(entry: Entry, config: OnboardingConfig) -> bool:
    if not isinstance(entry, HomeworkSubmission):
        return False
    for area in config.focus_areas:
        if area is FocusArea.OTHER:
            if entry.homework_type is HomeworkType.OTHER and entry.type_label and any(
                entry.type_label.lower() == label.lower()
                for label in config.focus_other_labels
            ):
                return True
        elif entry.homework_type in FOCUS_HOMEWORK_TYPES.get(area, ()):
            return True
    return False


def _entries_in_windows(
    record: ClientRecord, windows: tuple[TimeWindow, ...], kinds: frozenset[str]
) -> list[Entry]:
    out = []
    for entry in record.iter_entries():
        if not entry_matches_kind(entry, kinds):
            continue
        if any(w.contains(entry.occurred_at) for w in windows):
            out.append(entry)
    return out


def _window_for(windows: tuple[TimeWindow, ...], at: datetime) -> TimeWindow:
    for w in windows:
        if w.contains(at):
            return w
    return windows[-1]


def _journal_lines(subs: list[HomeworkSubmission]) -> list[ContextLine]:
    lines = []
    for sub in subs:
        day = sub.submitted_at.date().isoformat()
        if isinstance(sub.body, str):
            text = f"{day} {sub.homework_type.value}: {sub.body}"
        else:
            tr = sub.body
            parts = [
                f"situation: {tr.trigger_situation}",
                f"automatic thought: {tr.automatic_thought}",
            ]
            if tr.evidence:
                parts.append(f"evidence: {tr.evidence}")
            parts.append(f"reframe: {tr.rational_response}")
            text = f"{day} {sub.homework_type.value}: " + "; ".join(parts)
        lines.append(ContextLine(text=text, source_ids=(sub.entry_id,)))
    return lines


def _emotion_lines(logs: list[EmotionLog]) -> list[ContextLine]:
    by_day: dict[date, list[EmotionLog]] = defaultdict(list)
    for log in logs:
        by_day[log.date].append(log)
    lines = []
    for day in sorted(by_day):
        entries = sorted(by_day[day], key=lambda e: e.occurred_at)
        rendered = ", ".join(f"{e.descriptor.value} ({e.interval.value})" for e in entries)
        lines.append(
            ContextLine(
                text=f"{day.isoformat()} emotions: {rendered}",
                source_ids=tuple(e.entry_id for e in entries),
            )
        )
    return lines


def _activity_lines(logs: list[ActivityLog]) -> list[ContextLine]:
    by_day: dict[date, list[ActivityLog]] = defaultdict(list)
    for log in logs:
        by_day[log.date].append(log)
    lines = []
    for day in sorted(by_day):
        entries = sorted(by_day[day], key=lambda e: e.occurred_at)
        rendered = "; ".join(f"{e.description} ({e.block.value})" for e in entries)
        lines.append(
            ContextLine(
                text=f"{day.isoformat()} activities: {rendered}",
                source_ids=tuple(e.entry_id for e in entries),
            )
        )
    return lines


def _assessment_lines(results: list[AssessmentResult]) -> list[ContextLine]:
    lines = []
    for result in results:
        name = result.instrument_label or result.instrument.value
        text = f"{result.administered_at.date().isoformat()} {name}: total {result.total}"
        if result.thresholds.total is not None:
            text += f" (total threshold {result.thresholds.total})"
        if result.thresholds.items:
            above = sum(
                1
                for item, threshold in zip(result.items, result.thresholds.items)
                if item.score > threshold
            )
            text += f"; items above threshold: {above}"
        lines.append(ContextLine(text=text, source_ids=(result.entry_id,)))
    return lines


def _goal_lines(goals: list[TherapyGoal]) -> list[ContextLine]:
    return [
        ContextLine(
            text=(
                f"goal ({g.status.value}): {g.text} "
                f"(set {g.created_at.date().isoformat()})"
            ),
            source_ids=(g.goal_id,),
        )
        for g in goals
    ]


def _focus_evidence(entries: list[Entry], config: OnboardingConfig) -> str:
    if not config.focus_areas:
        return "not_configured"
    return "present" if any(entry_matches_focus(e, config) for e in entries) else "absent"


def _populate_lines(
    bundle: ContextBundle,
    entries: list[Entry],
    windows: tuple[TimeWindow, ...],
    config: OnboardingConfig,
    homework_frequency: HomeworkSummaryFrequency | None,
    tag_windows: bool,
) -> None:
    subs = [e for e in entries if isinstance(e, HomeworkSubmission)]
    if subs:
        if tag_windows:
            for window in windows:
                in_window = [s for s in subs if window.contains(s.occurred_at)]
                if homework_frequency is None:
                    bundle.homework_lines.extend(daily_lines(in_window, tag=window.tag))
                else:
                    bundle.homework_lines.extend(
                        homework_view(in_window, homework_frequency, tag=window.tag)
                    )
        elif homework_frequency is None:
            bundle.homework_lines.extend(daily_lines(subs))
        else:
            bundle.homework_lines.extend(homework_view(subs, homework_frequency))
    elif homework_frequency is HomeworkSummaryFrequency.NONE:
        bundle.homework_lines.extend(homework_view([], homework_frequency))

    journal_subs = [s for s in subs if s.homework_type.value in JOURNALING_TYPES]
    focus_first = sorted(
        journal_subs,
        key=lambda s: (not entry_matches_focus(s, config), s.occurred_at, s.entry_id),
    )
    bundle.journal_lines.extend(_journal_lines(focus_first))
    bundle.emotion_lines.extend(_emotion_lines([e for e in entries if isinstance(e, EmotionLog)]))
    bundle.activity_lines.extend(
        _activity_lines([e for e in entries if isinstance(e, ActivityLog)])
    )
    bundle.assessment_lines.extend(
        _assessment_lines([e for e in entries if isinstance(e, AssessmentResult)])
    )
    bundle.goal_lines.extend(_goal_lines([e for e in entries if isinstance(e, TherapyGoal)]))
    biometric = [e for e in entries if isinstance(e, BiometricDay)]
    _, bundle.biometric_text = aggregate_biometric_days(biometric)
    bundle.biometric_ids = tuple(e.entry_id for e in biometric)


def retrieve(
    record: ClientRecord,
    request: ChatRequest | SummaryRequest,
    config: OnboardingConfig,
    as_of: datetime | None = None,
) -> ContextBundle:
    """Assemble the context bundle for a chat question or a summary signal."""
    if record is None:
        raise UnknownRecord("record required")
    as_of = as_of or now_utc()

    if isinstance(request, SummaryRequest):
        windows = (summary_window(as_of),)
        scope = "summary"
        kinds = _ALL_EVIDENCE_KINDS
        homework_frequency = config.homework_summary
        tag_windows = False
        include_reading = True
    else:
        if request.question_scope is QuestionScope.COMPARATIVE:
            windows = comparative_windows(as_of)
            scope = "comparative"
            tag_windows = True
        else:
            windows = (recent_window(as_of),)
            scope = "recent"
            tag_windows = False
        kinds = CATEGORY_KINDS[request.question_category]
        homework_frequency = None
        include_reading = request.question_category in (
            QuestionCategory.RISK,
            QuestionCategory.SUGGESTION,
            QuestionCategory.GENERAL,
        )

    entries = _entries_in_windows(record, windows, kinds)
    truncated = len(entries) > MAX_BUNDLE_ENTRIES
    if truncated:
        entries = entries[-MAX_BUNDLE_ENTRIES:]  # ascending order; keep most recent

    # Focus-matching entries lead the source list (emphasis by ordering).
    ordered = sorted(
        entries,
        key=lambda e: (not entry_matches_focus(e, config), e.occurred_at, e.entry_id),
    )

    bundle = ContextBundle(
        record_id=record.record_id,
        scope=scope,
        windows=windows,
        reading=record.reading_materials,
        include_reading=include_reading,
        preferences=config.to_dict(),
        source_entries=list(ordered),
        truncated=truncated,
        evidence_present=bool(entries),
        focus_evidence=_focus_evidence(entries, config),
    )
    _populate_lines(bundle, entries, windows, config, homework_frequency, tag_windows)

    if include_reading and not record.reading_materials.is_empty():
        bundle.source_entries.append(record.reading_materials)
    return bundle
