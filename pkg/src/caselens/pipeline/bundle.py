"""Context bundle: the exact material a prompt is built from.

Every rendered line carries the entry ids it was derived from (empty means
the line comes from configuration), which makes provenance closure checkable
and gives the engines their anchor candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..records.entities import AnchorableEntry, ReadingStatus
from .windows import TimeWindow


@dataclass(frozen=True)
class ContextLine:
    text: str
    source_ids: tuple[str, ...] = ()


@dataclass
class ContextBundle:
    record_id: str
    scope: str  # "recent" | "comparative" | "summary"
    windows: tuple[TimeWindow, ...]
    homework_lines: list[ContextLine] = field(default_factory=list)
    journal_lines: list[ContextLine] = field(default_factory=list)
    emotion_lines: list[ContextLine] = field(default_factory=list)
    activity_lines: list[ContextLine] = field(default_factory=list)
    assessment_lines: list[ContextLine] = field(default_factory=list)
    goal_lines: list[ContextLine] = field(default_factory=list)
    biometric_text: str = "No data"
    biometric_ids: tuple[str, ...] = ()
    reading: ReadingStatus = field(default_factory=ReadingStatus)
    include_reading: bool = False
    preferences: dict = field(default_factory=dict)
    source_entries: list[AnchorableEntry] = field(default_factory=list)
    truncated: bool = False
    evidence_present: bool = False
    focus_evidence: str = "not_configured"  # "present" | "absent" | "not_configured"

    def all_lines(self) -> list[ContextLine]:
        return [
            *self.homework_lines,
            *self.journal_lines,
            *self.emotion_lines,
            *self.activity_lines,
            *self.assessment_lines,
            *self.goal_lines,
        ]
