"""End-to-end chat path: classify, retrieve, prompt, validate, anchor.

Each question is stateless: classification routes it to a category and time
scope, retrieval is filtered to the category's entry kinds, and evidence-empty
retrievals answer "Insufficient data" without a gateway call. The surfaced
classification is the one validation used, so therapists can always see the
routing behind an answer. Anchors on body bullets come from the retrieval
set: date mentions in a bullet bind it to the matching context lines, with a
most-recent-entry fallback.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from datetime import datetime, timezone

from ..dashboard import OnboardingConfig
from ..errors import GenerationFailed, ValidationError
from ..gateway.contracts import INSUFFICIENT_TEXT, NO_FOCUS_DATA_TEXT
from ..gateway.params import CHAT_PARAMS
from ..gateway.providers import Gateway
from ..gateway.validators import (
    ChatAnswer,
    ChatValidationContext,
    ViolationList,
    validate_chat,
)
from ..pipeline.bundle import ContextBundle
from ..pipeline.classifier import RoutingExplanation, explain_routing
from ..pipeline.prompts import build_chat_prompt
from ..pipeline.retrieval import ChatRequest, retrieve
from ..provenance import AnchoredText, anchor_token, attach_anchors
from ..records.store import RecordStore

_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}")


@dataclass(frozen=True)
class AnchoredChatAnswer:
    answer: ChatAnswer
    anchored: AnchoredText  # answer text with visible anchor tokens on bullets
    classification: RoutingExplanation
    generated_at: datetime
    attempts: int


class ChatEngine:
    def __init__(self, store: RecordStore, gateway: Gateway, retry_budget: int = 2):
        self.store = store
        self.gateway = gateway
        self.retry_budget = retry_budget
        self._lock = threading.Lock()

    def explain_routing(self, question: str) -> RoutingExplanation:
        return explain_routing(question)

    def answer(
        self,
        record_id: str,
        question: str,
        config: OnboardingConfig,
        as_of: datetime | None = None,
    ) -> AnchoredChatAnswer:
        if not question.strip():
            raise ValidationError("question must be non-empty", "$.question")
        classification = explain_routing(question)
        record = self.store.load(record_id)
        request = ChatRequest(
            question=question,
            question_category=classification.category,
            question_scope=classification.scope,
        )
        bundle = retrieve(record, request, config, as_of)

        if not bundle.evidence_present:
            answer = ChatAnswer(
                category=classification.category,
                insufficient=True,
                raw_data_block=None,
                body_bullets=(),
                text=INSUFFICIENT_TEXT,
            )
            return AnchoredChatAnswer(
                answer=answer,
                anchored=AnchoredText(body=INSUFFICIENT_TEXT, anchors=()),
                classification=classification,
                generated_at=datetime.now(timezone.utc),
                attempts=0,
            )

        prompt = build_chat_prompt(bundle, request, config)
        ctx = ChatValidationContext(
            category=classification.category,
            abilities=config.ai_chat_abilities,
            evidence_present=True,
            focus_areas_configured=bundle.focus_evidence != "not_configured",
            focus_evidence_present=bundle.focus_evidence == "present",
        )

        attempts = 0
        violations: ViolationList | None = None
        while attempts <= self.retry_budget:
            attempts += 1
            raw = self.gateway.complete(prompt, CHAT_PARAMS)
            result = validate_chat(raw, ctx, config)
            if isinstance(result, ViolationList):
                violations = result
                continue
            anchored = self._anchor(record.record_id, result, bundle)
            return AnchoredChatAnswer(
                answer=result,
                anchored=anchored,
                classification=classification,
                generated_at=datetime.now(timezone.utc),
                attempts=attempts,
            )
        raise GenerationFailed(
            f"chat generation failed after {attempts} attempt(s): {violations}",
            violations,
            attempts,
        )

    @staticmethod
    def _anchor(record_id: str, answer: ChatAnswer, bundle: ContextBundle) -> AnchoredText:
        dated_entries = [e for e in bundle.source_entries if hasattr(e, "occurred_at")]
        recent_first = sorted(
            dated_entries, key=lambda e: (e.occurred_at, e.entry_id), reverse=True
        )
        lines_by_date: dict[str, list[str]] = {}
        for line in bundle.all_lines():
            for token in _DATE_RE.findall(line.text):
                lines_by_date.setdefault(token, []).extend(line.source_ids)

        fallback_index = 0
        out_lines = []
        in_raw_block = answer.raw_data_block is not None
        raw_title_seen = False
        for line in answer.text.split("\n"):
            stripped = line.strip()
            if stripped == "Relevant Raw Data":
                raw_title_seen = True
                out_lines.append(line)
                continue
            is_raw_line = (
                in_raw_block and raw_title_seen and stripped.startswith("- ")
                and stripped[2:] in (answer.raw_data_block or ())
            )
            if not stripped.startswith("- ") or is_raw_line:
                out_lines.append(line)
                continue
            if stripped[2:] == NO_FOCUS_DATA_TEXT:
                out_lines.append(line)  # config-derived statement, no anchor
                continue
            ids: list[str] = []
            for token in _DATE_RE.findall(stripped):
                ids.extend(lines_by_date.get(token, ()))
            ids = list(dict.fromkeys(ids))[:3]
            if not ids and recent_first:
                ids = [recent_first[fallback_index % len(recent_first)].entry_id]
                fallback_index += 1
            tokens = " ".join(anchor_token(i) for i in ids)
            out_lines.append(f"{line} {tokens}".rstrip())
        return attach_anchors(record_id, "\n".join(out_lines), bundle.source_entries)
