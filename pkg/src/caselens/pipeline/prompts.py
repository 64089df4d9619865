"""Prompt construction: system template + parameters + client context + query.

Assembly is pure and byte-stable: the system text is the configured template
verbatim, parameters serialize in alphabetical order, and context blocks are
rendered from the bundle's provenance-mapped lines. Golden files under the
test fixtures pin the exact bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..dashboard import ChatAbility, OnboardingConfig, SummaryLevel
from ..errors import ConfigError
from ..gateway.params import CHAT_PARAMS, SUMMARY_PARAMS, InferenceParams
from ..records.entities import sha256_hex
from .bundle import ContextBundle, ContextLine
from .classifier import QuestionCategory
from .retrieval import ChatRequest

NO_DATA = "No data"
TRUNCATION_NOTICE = (
    "NOTE: context truncated to the most recent 200 entries; older entries omitted."
)

# Instruction sentence per category, mirroring the chat system template's
# category-specific section; the active one is called out in the directives.
CATEGORY_INSTRUCTIONS: dict[QuestionCategory, str] = {
    QuestionCategory.JOURNALING: (
        "extract recurring themes, emotions, or thought patterns from client entries."
    ),
    QuestionCategory.HOMEWORK: (
        "describe completion trends, consistency, gaps, or streaks."
    ),
    QuestionCategory.BIOMETRIC: (
        "summarize biometric patterns (sleep, heart rate, activity), anchoring metrics."
    ),
    QuestionCategory.RISK: (
        "list potential warning signs of emotional distress, using cautious phrasing "
        "(e.g., “Possible signals include...”) and concrete anchors (what/when/source)."
    ),
    QuestionCategory.SUGGESTION: (
        "Begin with the line: [Disclaimer] AI-generated suggestions may be incomplete "
        "or contain errors. Review raw client data before acting. Then provide less "
        "than 6 actionable bullet points, each linked to evidence from the client data."
    ),
    QuestionCategory.GENERAL: (
        "extract only the minimal details that directly answer the question."
    ),
}

RAW_DATA_INCLUDE = (
    'raw_data_block: include (add a block titled "Relevant Raw Data" listing only '
    "the directly relevant data points)"
)
RAW_DATA_OMIT = 'raw_data_block: omit (do not include a "Relevant Raw Data" block)'


def _load_template(name: str) -> str:
    return (
        resources.files("caselens.pipeline").joinpath("templates", name).read_text("utf-8")
    )


def chat_system_text() -> str:
    return _load_template("chat_system.txt")


def summary_system_text() -> str:
    return _load_template("summary_system.txt")


@dataclass(frozen=True)
class PromptDocument:
    system_text: str
    task_instructions: str
    context_block: str
    user_query_or_signal: str
    params: InferenceParams

    def to_text(self) -> str:
        return "\n\n".join(
            (
                self.system_text.rstrip("\n"),
                self.task_instructions,
                self.context_block,
                self.user_query_or_signal,
            )
        )

    def digest(self) -> str:
        return sha256_hex(self.to_text())


def _param_block(params: dict[str, str]) -> str:
    lines = ["PARAMETERS"]
    for name in sorted(params):
        lines.append(f"{name}: {params[name]}")
    return "\n".join(lines)


def _joined(values: list[str]) -> str:
    return ", ".join(values) if values else "none"


def _render_lines(lines: list[ContextLine]) -> str:
    return "\n".join(line.text for line in lines) if lines else NO_DATA


def _reading_block(bundle: ContextBundle) -> str:
    if not bundle.include_reading or bundle.reading.is_empty():
        return NO_DATA
    finished = "; ".join(bundle.reading.finished) if bundle.reading.finished else "none"
    unfinished = (
        "; ".join(bundle.reading.not_finished) if bundle.reading.not_finished else "none"
    )
    return f"finished: {finished}\nnot_finished: {unfinished}"


def _context_block(bundle: ContextBundle) -> str:
    sections = [
        ("reading_materials", _reading_block(bundle)),
        ("biometric_aggregates", bundle.biometric_text),
        ("homework_data", _render_lines(bundle.homework_lines)),
        ("journal_texts", _render_lines(bundle.journal_lines)),
        ("emotion_logs", _render_lines(bundle.emotion_lines)),
        ("activity_logs", _render_lines(bundle.activity_lines)),
        ("assessments", _render_lines(bundle.assessment_lines)),
        ("therapy_goals", _render_lines(bundle.goal_lines)),
    ]
    parts = ["CLIENT DATA"]
    for name, body in sections:
        parts.append(f"{name}:\n{body}")
    if bundle.truncated:
        parts.append(TRUNCATION_NOTICE)
    return "\n\n".join(parts)


def build_summary_prompt(bundle: ContextBundle, config: OnboardingConfig) -> PromptDocument:
    if config.summary_level is SummaryLevel.NONE:
        raise ConfigError(
            "summary prompts are not built for 'No AI Summary'; that level "
            "short-circuits before prompt construction"
        )
    params = {
        "focus_areas": _joined(config.focus_area_values()),
        "homework_summary": config.homework_summary.value,
        "homework_types": _joined([t.value for t in config.homework_types]),
        "summary_level": config.summary_level.value,
        "summary_priorities": _joined([p.value for p in config.summary_priorities]),
    }
    return PromptDocument(
        system_text=summary_system_text(),
        task_instructions=_param_block(params),
        context_block=_context_block(bundle),
        user_query_or_signal="SIGNAL\nsummary_widget_activated: true",
        params=SUMMARY_PARAMS,
    )


def build_chat_prompt(
    bundle: ContextBundle, request: ChatRequest, config: OnboardingConfig
) -> PromptDocument:
    if not request.question.strip():
        raise ConfigError("chat question must be non-empty")
    params = {
        "aiChatAbilities": _joined([a.value for a in config.ai_chat_abilities]),
        "focus_areas": _joined(config.focus_area_values()),
        "homework_types": _joined([t.value for t in config.homework_types]),
        "question": request.question,
        "question_category": request.question_category.value,
        "question_scope": request.question_scope.value,
    }
    raw_data_on = ChatAbility.RAW_DATA_EXTRACTION in config.ai_chat_abilities
    directives = [
        "DIRECTIVES",
        (
            "active_category_instruction: "
            f"{request.question_category.value}: "
            f"{CATEGORY_INSTRUCTIONS[request.question_category]}"
        ),
        RAW_DATA_INCLUDE if raw_data_on else RAW_DATA_OMIT,
        f"focus_evidence: {bundle.focus_evidence}",
    ]
    return PromptDocument(
        system_text=chat_system_text(),
        task_instructions=_param_block(params) + "\n\n" + "\n".join(directives),
        context_block=_context_block(bundle),
        user_query_or_signal=f"QUERY\n{request.question}",
        params=CHAT_PARAMS,
    )
