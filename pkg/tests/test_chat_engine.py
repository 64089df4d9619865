from __future__ import annotations

import json

import pytest

from caselens.dashboard import ChatAbility, FocusArea, OnboardingConfig
from caselens.engines.chat import ChatEngine
from caselens.errors import GenerationFailed, UnknownRecord, ValidationError
from caselens.gateway.contracts import (
    INSUFFICIENT_TEXT,
    NO_FOCUS_DATA_TEXT,
    SUGGESTION_DISCLAIMER,
)
from caselens.gateway.providers import Gateway, MockProvider
from caselens.pipeline import QuestionCategory, QuestionScope
from caselens.provenance import ANCHOR_TOKEN_RE, audit_document
from caselens.records.store import RecordStore

from conftest import AS_OF


def make_engine(store, provider=None, retry_budget=2):
    return ChatEngine(store, Gateway(provider or MockProvider()), retry_budget=retry_budget)


class TestShortCircuits:
    def test_biometric_question_without_biometrics_is_insufficient(
        self, tmp_path, detailed_config
    ):
        store = RecordStore(tmp_path / "s.db")
        store.put_record(
            json.dumps({"schema_version": 1, "record_id": "r", "client_label": ""})
        )
        engine = make_engine(store)
        result = engine.answer("r", "How is her sleep lately?", detailed_config, AS_OF)
        assert result.answer.insufficient is True
        assert result.answer.text == INSUFFICIENT_TEXT
        assert result.attempts == 0
        assert len(engine.gateway.call_log) == 0

    def test_unknown_record(self, store, detailed_config):
        with pytest.raises(UnknownRecord):
            make_engine(store).answer("ghost", "anything", detailed_config, AS_OF)

    def test_empty_question_rejected(self, store, detailed_config):
        with pytest.raises(ValidationError):
            make_engine(store).answer("elias", "   ", detailed_config, AS_OF)


class TestAnswers:
    def test_suggestion_answer_disclaimer_and_anchored_bullets(self, store, detailed_config):
        engine = make_engine(store)
        result = engine.answer(
            "elias", "What homework should I assign next?", detailed_config, AS_OF
        )
        assert result.answer.category is QuestionCategory.SUGGESTION
        assert result.answer.text.split("\n", 1)[0] == SUGGESTION_DISCLAIMER
        assert 1 <= len(result.answer.body_bullets) <= 5
        for line in result.anchored.body.split("\n"):
            stripped = line.strip()
            if not stripped.startswith("- "):
                continue
            if stripped[2:] in (result.answer.raw_data_block or ()):
                continue
            assert ANCHOR_TOKEN_RE.search(stripped), f"unanchored bullet: {stripped!r}"

    def test_comparative_scope_recorded_with_raw_block(self, store, detailed_config):
        engine = make_engine(store)
        result = engine.answer(
            "elias", "Has this concern come up before?", detailed_config, AS_OF
        )
        assert result.classification.scope is QuestionScope.COMPARATIVE
        assert result.answer.raw_data_block is not None
        assert audit_document(result.anchored, store).clean()

    def test_raw_block_omitted_without_preference(self, store):
        config = OnboardingConfig()  # no aiChatAbilities
        engine = make_engine(store)
        result = engine.answer("elias", "How is his sleep?", config, AS_OF)
        assert result.answer.raw_data_block is None
        assert "Relevant Raw Data" not in result.answer.text

    def test_routing_matches_validated_category(self, store, detailed_config):
        engine = make_engine(store)
        for question in (
            "How is his sleep trending?",
            "Any risk of distress?",
            "What are the journal themes?",
            "Did he complete his homework?",
        ):
            result = engine.answer("elias", question, detailed_config, AS_OF)
            assert result.answer.category is result.classification.category

    def test_focus_note_when_focus_evidence_absent(self, store):
        config = OnboardingConfig(
            focus_areas=(FocusArea.EXPOSURE_THERAPY,),
            ai_chat_abilities=(ChatAbility.RAW_DATA_EXTRACTION,),
        )
        engine = make_engine(store)
        result = engine.answer("elias", "How is the homework going?", config, AS_OF)
        assert NO_FOCUS_DATA_TEXT in result.answer.text
        # The focus note itself carries no anchor.
        for line in result.anchored.body.split("\n"):
            if NO_FOCUS_DATA_TEXT in line:
                assert not ANCHOR_TOKEN_RE.search(line)

    def test_risk_unhedged_provider_rejected(self, store, detailed_config):
        class UnhedgedProvider:
            name = "unhedged"

            def complete(self, prompt, params):
                return "- The client is diagnosed with severe depression."

        engine = make_engine(store, provider=UnhedgedProvider(), retry_budget=1)
        with pytest.raises(GenerationFailed) as exc:
            engine.answer("elias", "any warning signs of distress?", detailed_config, AS_OF)
        assert "unhedged_risk_language" in exc.value.violations.codes()
        assert exc.value.attempts == 2


class TestExplainRouting:
    def test_rule_table_lookup(self, store):
        engine = make_engine(store)
        explanation = engine.explain_routing("compare her sleep to last month")
        fired = {(r.value, r.keyword) for r in explanation.matched_rules}
        assert ("biometric", "sleep") in fired
        assert ("comparative", "compare") in fired

    def test_gibberish_fallback_empty_rules(self, store):
        explanation = make_engine(store).explain_routing("xyzzy plugh")
        assert explanation.category is QuestionCategory.GENERAL
        assert explanation.scope is QuestionScope.RECENT
        assert explanation.matched_rules == ()

    def test_agreement_with_answer_classification(self, store, detailed_config):
        engine = make_engine(store)
        question = "Show entries where sleep dropped before low-mood logs."
        explanation = engine.explain_routing(question)
        result = engine.answer("elias", question, detailed_config, AS_OF)
        assert result.classification.category is explanation.category
        assert result.classification.scope is explanation.scope
