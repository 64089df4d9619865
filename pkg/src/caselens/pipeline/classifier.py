"""Deterministic request classification for the chat path.

Keyword rule tables route a free-text question to one category and one time
scope. Classification is total: anything that matches no rule falls back to
(general, recent). The fired rules are surfaced so therapists can inspect the
routing. Substring matching on the lowercased question is a documented
heuristic; an LLM-backed classifier can be plugged in behind the same
interface but is off by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class QuestionCategory(str, Enum):
    JOURNALING = "journaling"
    HOMEWORK = "homework"
    BIOMETRIC = "biometric"
    RISK = "risk"
    SUGGESTION = "suggestion"
    GENERAL = "general"


class QuestionScope(str, Enum):
    RECENT = "recent"
    COMPARATIVE = "comparative"


# Evaluated in precedence order; first category with any hit wins.
CATEGORY_RULES: tuple[tuple[QuestionCategory, tuple[str, ...]], ...] = (
    (
        QuestionCategory.RISK,
        ("risk", "harm", "suicid", "crisis", "danger", "warning sign", "distress", "safety"),
    ),
    (
        QuestionCategory.SUGGESTION,
        ("should i", "should we", "recommend", "suggest", "next homework", "what homework", "assign next"),
    ),
    (
        QuestionCategory.BIOMETRIC,
        ("sleep", "heart", "bpm", "steps", "biometric", "apple health", "mindfulness minutes", "activity level"),
    ),
    (
        QuestionCategory.HOMEWORK,
        ("homework", "assignment", "worksheet", "completion", "completed", "streak", "submitted", "adherence"),
    ),
    (
        QuestionCategory.JOURNALING,
        ("journal", "thought record", "diary", "gratitude", "wrote", "entries", "entry", "mood", "automatic thought", "reflection"),
    ),
)

COMPARATIVE_CUES: tuple[str, ...] = (
    "before",
    "compare",
    "compared",
    "comparison",
    "last month",
    "last week",
    "previous",
    "previously",
    "over time",
    "trend",
    "history",
    "historically",
    "earlier",
    "week-over-week",
    "versus",
    " vs ",
    "change since",
)


@dataclass(frozen=True)
class MatchedRule:
    dimension: str  # "category" | "scope"
    value: str  # the category/scope the rule argues for
    keyword: str


@dataclass(frozen=True)
class RoutingExplanation:
    category: QuestionCategory
    scope: QuestionScope
    matched_rules: tuple[MatchedRule, ...]

    def to_dict(self) -> dict:
        return {
            "category": self.category.value,
            "scope": self.scope.value,
            "matched_rules": [
                {"dimension": r.dimension, "value": r.value, "keyword": r.keyword}
                for r in self.matched_rules
            ],
        }


def explain_routing(question: str) -> RoutingExplanation:
    """Classify and list every rule that fired. An empty rule list means the
    fallback (general, recent) applied."""
    text = question.lower()
    matched: list[MatchedRule] = []
    category = QuestionCategory.GENERAL
    for candidate, keywords in CATEGORY_RULES:
        hits = [kw for kw in keywords if kw in text]
        if hits and category is QuestionCategory.GENERAL:
            category = candidate
        matched.extend(MatchedRule("category", candidate.value, kw) for kw in hits)

    scope_hits = [cue for cue in COMPARATIVE_CUES if cue in text]
    scope = QuestionScope.COMPARATIVE if scope_hits else QuestionScope.RECENT
    matched.extend(
        MatchedRule("scope", QuestionScope.COMPARATIVE.value, cue) for cue in scope_hits
    )
    return RoutingExplanation(category=category, scope=scope, matched_rules=tuple(matched))


def classify(question: str) -> tuple[QuestionCategory, QuestionScope]:
    explanation = explain_routing(question)
    return explanation.category, explanation.scope
