"""End-to-end summary path: short-circuits, pipeline, validation, anchoring.

The "No AI Summary" level returns its literal document without touching the
gateway. Otherwise the engine retrieves a four-week bundle, builds the
prompt, completes with a bounded retry budget on contract violations, and
then injects provenance anchors per section from the retrieval set (model
output is never trusted for citations). A validated section with content but
no candidate entries is itself a violation: no orphan claims.

Results are cached by (record content digest, config digest) and invalidated
implicitly when the record changes; concurrent generations for the same key
coalesce behind a per-key lock.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime, timezone

from ..dashboard import HomeworkSummaryFrequency, OnboardingConfig, SummaryLevel
from ..errors import GenerationFailed
from ..gateway.contracts import NO_DATA, NO_SUMMARY_TEXT, SUMMARY_HEADERS
from ..gateway.params import SUMMARY_PARAMS
from ..gateway.providers import Gateway
from ..gateway.validators import (
    SummaryDocument,
    Violation,
    ViolationList,
    validate_summary,
)
from ..pipeline.bundle import ContextBundle
from ..pipeline.homework_view import homework_view
from ..pipeline.prompts import build_summary_prompt
from ..pipeline.retrieval import JOURNALING_TYPES, SummaryRequest, retrieve
from ..pipeline.risk import has_risk_cue
from ..pipeline.windows import TimeWindow
from ..provenance import AnchoredText, ProvenanceAnchor, anchor_token, attach_anchors
from ..records.documents import entry_digest, record_digest
from ..records.entities import (
    ActivityLog,
    AnchorableEntry,
    AssessmentResult,
    BiometricDay,
    ClientRecord,
    EmotionLog,
    HomeworkSubmission,
    TherapyGoal,
    canonical_json,
    sha256_hex,
)
from ..records.store import RecordStore

MAX_ANCHORS_PER_SECTION = 8


@dataclass(frozen=True)
class AnchoredSummary:
    doc: SummaryDocument
    anchored: AnchoredText  # full document body with visible anchor tokens
    section_anchors: dict[str, tuple[ProvenanceAnchor, ...]]
    generated_at: datetime
    attempts: int


def summary_frequency_view(
    record: ClientRecord,
    frequency: HomeworkSummaryFrequency,
    window: TimeWindow | None = None,
) -> str:
    """Aggregated homework text at the given granularity (the bundle's
    homework_data block); never copies submission bodies for daily/none."""
    subs = list(record.submissions)
    if window is not None:
        subs = [s for s in subs if window.contains(s.occurred_at)]
    lines = homework_view(subs, frequency)
    return "\n".join(line.text for line in lines) if lines else NO_DATA


def _section_candidates(bundle: ContextBundle) -> dict[str, list[AnchorableEntry]]:
    entries = [e for e in bundle.source_entries if hasattr(e, "occurred_at")]
    by_id = {e.entry_id: e for e in entries}
    subs = [e for e in entries if isinstance(e, HomeworkSubmission)]
    journaling = [s for s in subs if s.homework_type.value in JOURNALING_TYPES]
    emotions = [e for e in entries if isinstance(e, EmotionLog)]
    biometrics = [e for e in entries if isinstance(e, BiometricDay)]
    others = [
        e
        for e in entries
        if isinstance(e, (ActivityLog, AssessmentResult, TherapyGoal))
    ]

    risk_ids: list[str] = []
    for line in (*bundle.journal_lines, *bundle.emotion_lines):
        if has_risk_cue(line.text):
            risk_ids.extend(line.source_ids)
    risk_entries = [by_id[i] for i in dict.fromkeys(risk_ids) if i in by_id]

    reading = (
        [bundle.reading]
        if bundle.include_reading and not bundle.reading.is_empty()
        else []
    )
    overall = [max(entries, key=lambda e: (e.occurred_at, e.entry_id))] if entries else reading

    candidates = {
        SUMMARY_HEADERS[0]: reading,
        SUMMARY_HEADERS[1]: subs,
        SUMMARY_HEADERS[2]: [*emotions, *subs],
        SUMMARY_HEADERS[3]: journaling,
        SUMMARY_HEADERS[4]: biometrics,
        SUMMARY_HEADERS[5]: risk_entries,
        "Other Observations": others,
        SUMMARY_HEADERS[6]: overall,
    }
    capped = {}
    for header, items in candidates.items():
        dated = [e for e in items if hasattr(e, "occurred_at")]
        undated = [e for e in items if not hasattr(e, "occurred_at")]
        dated.sort(key=lambda e: (e.occurred_at, e.entry_id), reverse=True)
        capped[header] = (undated + dated)[:MAX_ANCHORS_PER_SECTION]
    return capped


class SummaryEngine:
    def __init__(self, store: RecordStore, gateway: Gateway, retry_budget: int = 2):
        self.store = store
        self.gateway = gateway
        self.retry_budget = retry_budget
        self._cache: dict[tuple, AnchoredSummary] = {}
        self._key_locks: dict[tuple, threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock_for(self, key: tuple) -> threading.Lock:
        with self._guard:
            return self._key_locks.setdefault(key, threading.Lock())

    def generate_summary(
        self,
        record_id: str,
        config: OnboardingConfig,
        as_of: datetime | None = None,
    ) -> AnchoredSummary:
        if config.summary_level is SummaryLevel.NONE:
            doc = SummaryDocument(level=SummaryLevel.NONE, literal=NO_SUMMARY_TEXT)
            return AnchoredSummary(
                doc=doc,
                anchored=AnchoredText(body=NO_SUMMARY_TEXT, anchors=()),
                section_anchors={},
                generated_at=datetime.now(timezone.utc),
                attempts=0,
            )

        record = self.store.load(record_id)
        config_digest = sha256_hex(canonical_json(config.to_dict()))
        key = (
            record_digest(record),
            config_digest,
            as_of.isoformat() if as_of is not None else "auto",
        )
        with self._lock_for(key):
            cached = self._cache.get(key)
            if cached is not None:
                return cached
            result = self._generate(record, config, as_of)
            self._cache[key] = result
            return result

    def _generate(
        self, record: ClientRecord, config: OnboardingConfig, as_of: datetime | None
    ) -> AnchoredSummary:
        bundle = retrieve(record, SummaryRequest(record_id=record.record_id), config, as_of)
        prompt = build_summary_prompt(bundle, config)
        candidates = _section_candidates(bundle)

        attempts = 0
        violations: ViolationList | None = None
        while attempts <= self.retry_budget:
            attempts += 1
            raw = self.gateway.complete(prompt, SUMMARY_PARAMS)
            result = validate_summary(raw, config)
            if isinstance(result, ViolationList):
                violations = result
                continue
            coverage = self._coverage_violations(result, candidates)
            if coverage:
                violations = ViolationList(tuple(coverage))
                continue
            return self._anchor(record.record_id, result, bundle, candidates, attempts)
        raise GenerationFailed(
            f"summary generation failed after {attempts} attempt(s): {violations}",
            violations,
            attempts,
        )

    @staticmethod
    def _coverage_violations(
        doc: SummaryDocument, candidates: dict[str, list[AnchorableEntry]]
    ) -> list[Violation]:
        if doc.level is not SummaryLevel.DETAILED:
            return []
        out = []
        for section in doc.sections:
            if section.body != NO_DATA and not candidates.get(section.header):
                out.append(
                    Violation(
                        "unanchorable_section",
                        f"section {section.header!r} has content but no entry in the "
                        "retrieval set backs it",
                    )
                )
        return out

    def _anchor(
        self,
        record_id: str,
        doc: SummaryDocument,
        bundle: ContextBundle,
        candidates: dict[str, list[AnchorableEntry]],
        attempts: int,
    ) -> AnchoredSummary:
        sources = list(bundle.source_entries)
        section_anchors: dict[str, tuple[ProvenanceAnchor, ...]] = {}

        if doc.level is SummaryLevel.BASIC:
            # One representative anchor per domain with data.
            representatives: list[AnchorableEntry] = []
            for header in SUMMARY_HEADERS[:-1]:
                for entry in candidates.get(header, [])[:1]:
                    if all(entry.entry_id != e.entry_id for e in representatives):
                        representatives.append(entry)
            tokens = " ".join(anchor_token(e.entry_id) for e in representatives)
            body = f"{doc.paragraph} {tokens}".strip()
            anchored = attach_anchors(record_id, body, sources)
            section_anchors["paragraph"] = anchored.anchors
            return AnchoredSummary(
                doc=doc,
                anchored=anchored,
                section_anchors=section_anchors,
                generated_at=datetime.now(timezone.utc),
                attempts=attempts,
            )

        parts = []
        for section in doc.sections:
            body = section.body
            if body != NO_DATA:
                entries = candidates.get(section.header, [])
                tokens = " ".join(anchor_token(e.entry_id) for e in entries)
                if tokens:
                    body = f"{body} {tokens}"
            parts.append(f"{section.header}\n{body}\n")
        full_body = "\n".join(parts).rstrip("\n")
        anchored = attach_anchors(record_id, full_body, sources)
        for section in doc.sections:
            entries = candidates.get(section.header, []) if section.body != NO_DATA else []
            section_anchors[section.header] = tuple(
                ProvenanceAnchor(
                    record_id=record_id,
                    entry_id=e.entry_id,
                    kind=e.kind,
                    excerpt_hash=entry_digest(e),
                )
                for e in entries
            )
        return AnchoredSummary(
            doc=doc,
            anchored=anchored,
            section_anchors=section_anchors,
            generated_at=datetime.now(timezone.utc),
            attempts=attempts,
        )
