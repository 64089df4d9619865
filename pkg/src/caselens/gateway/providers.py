"""Completion providers and the gateway that fronts them.

The gateway records every call (prompt digest + inference params) in an
append-only log, which is how the fixed-parameter contract stays assertable.
Provider errors surface to the caller; transient retries are bounded by an
explicit budget and never happen silently beyond it.

The mock provider is the default outside production: it deterministically
synthesizes contract-conforming output from the prompt itself (identical
prompt bytes always yield identical output bytes), and can be overridden per
prompt by a script file named <prompt-digest>.txt in its scripts directory.
"""

from __future__ import annotations

import os
import re
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import TYPE_CHECKING, Protocol

import httpx

from ..errors import ProviderTimeout, ProviderUnavailable, QuotaExceeded
from ..pipeline.homework_view import NOT_SUBMITTED_LINE, SUBMITTED_LINE
from ..pipeline.risk import risk_matching
from .contracts import (
    INSUFFICIENT_TEXT,
    NO_DATA,
    NO_FOCUS_DATA_TEXT,
    RAW_DATA_TITLE,
    SUGGESTION_DISCLAIMER,
    SUMMARY_HEADERS,
)
from .params import InferenceParams

if TYPE_CHECKING:
    from ..pipeline.prompts import PromptDocument


class CompletionProvider(Protocol):
    name: str

    def complete(self, prompt: "PromptDocument", params: InferenceParams) -> str: ...


@dataclass(frozen=True)
class CallRecord:
    prompt_digest: str
    params: InferenceParams
    provider: str
    at: datetime


class CallLog:
    """Append-only, thread-safe record of gateway completions."""

    def __init__(self):
        self._records: list[CallRecord] = []
        self._lock = threading.Lock()

    def append(self, record: CallRecord) -> None:
        with self._lock:
            self._records.append(record)

    def snapshot(self) -> tuple[CallRecord, ...]:
        with self._lock:
            return tuple(self._records)

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)


class Gateway:
    """Fronts a provider with call logging and a bounded transient-retry
    budget (0 by default: errors surface immediately)."""

    def __init__(self, provider: CompletionProvider, transient_retries: int = 0):
        self.provider = provider
        self.transient_retries = transient_retries
        self.call_log = CallLog()

    def complete(self, prompt: "PromptDocument", params: InferenceParams) -> str:
        attempts = 0
        while True:
            attempts += 1
            self.call_log.append(
                CallRecord(
                    prompt_digest=prompt.digest(),
                    params=params,
                    provider=self.provider.name,
                    at=datetime.now(timezone.utc),
                )
            )
            try:
                return self.provider.complete(prompt, params)
            except (ProviderUnavailable, ProviderTimeout, QuotaExceeded):
                if attempts > self.transient_retries:
                    raise


class RemoteProvider:
    """OpenAI-style chat-completions endpoint, configured by environment."""

    name = "remote"

    def __init__(self, endpoint: str | None, api_key: str | None, timeout: float = 60.0):
        self.endpoint = endpoint
        self.api_key = api_key
        self.timeout = timeout

    def complete(self, prompt: "PromptDocument", params: InferenceParams) -> str:
        if not self.endpoint:
            raise ProviderUnavailable("LLM_ENDPOINT is not configured")
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        payload = {
            "messages": [
                {"role": "system", "content": prompt.system_text},
                {
                    "role": "user",
                    "content": "\n\n".join(
                        (
                            prompt.task_instructions,
                            prompt.context_block,
                            prompt.user_query_or_signal,
                        )
                    ),
                },
            ],
            "temperature": params.temperature,
            "max_tokens": params.max_output_tokens,
        }
        try:
            response = httpx.post(
                self.endpoint, json=payload, headers=headers, timeout=self.timeout
            )
        except httpx.TimeoutException as exc:
            raise ProviderTimeout(f"provider timed out: {exc}") from exc
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"provider unreachable: {exc}") from exc
        if response.status_code == 429:
            raise QuotaExceeded("provider quota exceeded")
        if response.status_code != 200:
            raise ProviderUnavailable(f"provider returned HTTP {response.status_code}")
        body = response.json()
        try:
            return body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProviderUnavailable(f"malformed provider response: {exc}") from exc


# ---------------------------------------------------------------------------
# Deterministic mock
# ---------------------------------------------------------------------------

_STOPWORDS = frozenset(
    "the a an and or but i my me we our us you your to of in on at is are was were it its "
    "this that these those with for not never will would have has had about them they he "
    "she his her do did does so if then than very just too also".split()
)

_CONTEXT_SECTIONS = (
    "reading_materials",
    "biometric_aggregates",
    "homework_data",
    "journal_texts",
    "emotion_logs",
    "activity_logs",
    "assessments",
    "therapy_goals",
)


def _parse_context(context_block: str) -> dict[str, list[str]]:
    """Section name -> content lines; "No data" sections come back empty."""
    sections: dict[str, list[str]] = {name: [] for name in _CONTEXT_SECTIONS}
    for part in context_block.split("\n\n"):
        name, sep, body = part.partition(":\n")
        if not sep or name not in sections:
            continue
        if body.strip() and body.strip() != NO_DATA:
            sections[name] = body.split("\n")
    return sections


def _parse_kv(block: str, stop_at: tuple[str, ...] = ()) -> dict[str, str]:
    values: dict[str, str] = {}
    for line in block.split("\n"):
        if line in stop_at:
            continue
        key, sep, value = line.partition(": ")
        if sep and " " not in key:
            values.setdefault(key, value)
    return values


def _top_words(texts: list[str], k: int = 2) -> list[str]:
    counts: dict[str, int] = {}
    for text in texts:
        for word in re.findall(r"[a-z_']+", text.lower()):
            if len(word) >= 4 and word not in _STOPWORDS and word not in _THEME_NOISE:
                counts[word] = counts.get(word, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [word for word, _ in ranked[:k]]


_DELTA_RE = re.compile(r"mean mood delta ([+-]\d+\.\d+)")
_METRIC_RE = re.compile(r"^(\w+): mean ([\d.]+) \(min ([\d.]+) – max ([\d.]+)\) (\w+)$")
_DESCRIPTOR_RE = re.compile(
    r"(Energetic|Overwhelmed|Sleepy|Enthusiastic|Bored|Relaxed)"
)
_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}")
_WEEK_RE = re.compile(r"\d{4}-W\d{2}")

# Structural label words in rendered journal lines; excluded from themes.
_THEME_NOISE = frozenset(
    {
        "situation",
        "automatic",
        "thought",
        "evidence",
        "reframe",
        "thought_record",
        "journaling",
        "gratitude_journal",
    }
)


def _mean_delta_text(homework_lines: list[str]) -> str | None:
    deltas = [float(m) for m in _DELTA_RE.findall("\n".join(homework_lines))]
    if not deltas:
        return None
    return f"{sum(deltas) / len(deltas):+.2f}"


def _biometric_prose(lines: list[str]) -> str:
    phrases = []
    for line in lines:
        match = _METRIC_RE.match(line)
        if match:
            name, mean, lo, hi, unit = match.groups()
            phrases.append(f"{name.replace('_', ' ')} averaged {mean} {unit} ({lo} to {hi})")
    return "; ".join(phrases) + "." if phrases else NO_DATA


def _dates_span(lines: list[str]) -> str:
    text = "\n".join(lines)
    dates = _DATE_RE.findall(text) or _WEEK_RE.findall(text)
    if not dates:
        return ""
    return f" between {min(dates)} and {max(dates)}" if len(set(dates)) > 1 else f" on {dates[0]}"


class MockProvider:
    """Offline provider: conforming output synthesized from the prompt, with
    optional per-digest script overrides for fault-injection tests."""

    name = "mock"

    def __init__(self, scripts_dir: str | Path | None = None):
        self.scripts_dir = Path(scripts_dir) if scripts_dir else None

    def complete(self, prompt: "PromptDocument", params: InferenceParams) -> str:
        if self.scripts_dir is not None:
            script = self.scripts_dir / f"{prompt.digest()}.txt"
            if script.exists():
                return script.read_text("utf-8")
        if prompt.system_text.startswith("You are a clinical-support summarizer"):
            return self._summary(prompt)
        return self._chat(prompt)

    # -- summary path --------------------------------------------------------

    def _summary(self, prompt: "PromptDocument") -> str:
        params = _parse_kv(prompt.task_instructions, stop_at=("PARAMETERS",))
        sections = _parse_context(prompt.context_block)
        level = params.get("summary_level", "Detailed Analysis")
        bodies = self._summary_bodies(sections)
        if level == "Basic Overview":
            return self._basic_paragraph(bodies)
        out = []
        for header in SUMMARY_HEADERS:
            out.append(header)
            out.append(bodies[header])
            out.append("")
        return "\n".join(out).rstrip("\n") + "\n"

    def _summary_bodies(self, sections: dict[str, list[str]]) -> dict[str, str]:
        reading = sections["reading_materials"]
        homework = sections["homework_data"]
        if homework == [NOT_SUBMITTED_LINE]:
            homework = []  # presence line stating absence carries no evidence
        journals = sections["journal_texts"]
        emotions = sections["emotion_logs"]
        biometrics = sections["biometric_aggregates"]

        bodies: dict[str, str] = {}

        if reading:
            kv = _parse_kv("\n".join(reading))
            finished = kv.get("finished", "none")
            unfinished = kv.get("not_finished", "none")
            bodies["Reading Materials"] = (
                f"Completed: {finished}. Still unfinished: {unfinished}."
            )
        else:
            bodies["Reading Materials"] = NO_DATA

        if homework == [SUBMITTED_LINE]:
            bodies["Homework Completion Trends"] = homework[0]
        elif homework:
            noun = "aggregate" if len(homework) == 1 else "aggregates"
            bodies["Homework Completion Trends"] = (
                f"Submission activity covers {len(homework)} {noun}"
                f"{_dates_span(homework)}; cadence appears steady across the window."
            )
        else:
            bodies["Homework Completion Trends"] = NO_DATA

        mood_bits = []
        delta = _mean_delta_text(homework)
        if delta is not None:
            mood_bits.append(f"mood ratings shifted {delta} on average after tasks")
        descriptors = _top_words_descriptors(emotions)
        if descriptors:
            mood_bits.append(f"frequent emotion states: {', '.join(descriptors)}")
        bodies["Mental Health Patterns"] = (
            ("Across the window, " + "; ".join(mood_bits) + ".") if mood_bits else NO_DATA
        )

        if journals:
            themes = _top_words(journals)
            complete_fields = sum(
                1 for line in journals if "situation:" in line and "reframe:" in line
            )
            parts = [f"{len(journals)} entr{'y' if len(journals) == 1 else 'ies'} in scope"]
            if complete_fields:
                parts.append(
                    f"{complete_fields} thought record(s) carry complete "
                    "situation, automatic-thought, and reframe fields"
                )
            if themes:
                parts.append(f"recurring terms: {', '.join(themes)}")
            bodies["Journaling & Thought Records"] = "; ".join(parts) + "."
        else:
            bodies["Journaling & Thought Records"] = NO_DATA

        bodies["Biometric Trends from Apple Health"] = _biometric_prose(biometrics)

        risk_lines = risk_matching(journals + emotions)
        if risk_lines:
            span = _dates_span(risk_lines)
            bodies["Risk Alerts for Emotional Distress"] = (
                f"Possible signals include distress-related language in "
                f"{len(risk_lines)} entr{'y' if len(risk_lines) == 1 else 'ies'}{span}; "
                "review the linked entries."
            )
        else:
            bodies["Risk Alerts for Emotional Distress"] = NO_DATA

        data_bearing = [h for h, b in bodies.items() if b != NO_DATA]
        if data_bearing:
            bodies["Overall Summary"] = (
                "The client engaged with tracked domains across the window; "
                "patterns above are drawn directly from the linked entries."
            )
        else:
            bodies["Overall Summary"] = NO_DATA
        return bodies

    def _basic_paragraph(self, bodies: dict[str, str]) -> str:
        phrases = []
        labels = {
            "Reading Materials": "Reading",
            "Homework Completion Trends": "Homework",
            "Mental Health Patterns": "Mood",
            "Journaling & Thought Records": "Journaling",
            "Biometric Trends from Apple Health": "Biometrics",
            "Risk Alerts for Emotional Distress": "Risk",
        }
        for header, label in labels.items():
            body = bodies[header]
            phrases.append(f"{label}: {body if body != NO_DATA else 'no data'}")
        return " ".join(phrases)

    # -- chat path -----------------------------------------------------------

    def _chat(self, prompt: "PromptDocument") -> str:
        params = _parse_kv(prompt.task_instructions, stop_at=("PARAMETERS", "DIRECTIVES"))
        sections = _parse_context(prompt.context_block)
        category = params.get("question_category", "general")
        include_raw = "raw_data_block: include" in prompt.task_instructions
        focus_absent = "focus_evidence: absent" in prompt.task_instructions

        candidates = self._candidate_lines(category, sections)
        if not candidates:
            return INSUFFICIENT_TEXT

        bullets = self._bullets(category, sections, candidates)
        if focus_absent:
            bullets.append(f"- {NO_FOCUS_DATA_TEXT}")

        out: list[str] = []
        if category == "suggestion":
            out.append(SUGGESTION_DISCLAIMER)
            out.append("")
        if include_raw:
            out.append(RAW_DATA_TITLE)
            out.extend(f"- {line}" for line in candidates[:5])
            out.append("")
        out.extend(bullets)
        return "\n".join(out)

    @staticmethod
    def _candidate_lines(category: str, sections: dict[str, list[str]]) -> list[str]:
        by_category = {
            "journaling": ("journal_texts",),
            "homework": ("homework_data",),
            "biometric": ("biometric_aggregates",),
            "risk": ("journal_texts", "emotion_logs", "homework_data", "assessments"),
            "suggestion": _CONTEXT_SECTIONS,
            "general": _CONTEXT_SECTIONS,
        }
        lines: list[str] = []
        for name in by_category.get(category, _CONTEXT_SECTIONS):
            lines.extend(sections[name])
        return lines

    def _bullets(
        self, category: str, sections: dict[str, list[str]], candidates: list[str]
    ) -> list[str]:
        homework = sections["homework_data"]
        journals = sections["journal_texts"]
        emotions = sections["emotion_logs"]
        biometrics = sections["biometric_aggregates"]

        if category == "biometric":
            return [
                f"- {phrase}"
                for phrase in _biometric_prose(biometrics).rstrip(".").split("; ")
                if phrase and phrase != NO_DATA
            ] or [f"- Biometric records in scope: {len(biometrics)} line(s)."]
        if category == "journaling":
            themes = _top_words(journals)
            bullets = [
                f"- {len(journals)} journal/thought-record entr"
                f"{'y' if len(journals) == 1 else 'ies'} in scope{_dates_span(journals)}."
            ]
            if themes:
                bullets.append(f"- Recurring terms across entries: {', '.join(themes)}.")
            return bullets
        if category == "homework":
            bullets = [
                f"- {len(homework)} homework aggregate(s) in scope{_dates_span(homework)}."
            ]
            delta = _mean_delta_text(homework)
            if delta is not None:
                bullets.append(f"- Mean mood delta across submissions: {delta}.")
            return bullets
        if category == "risk":
            risk_lines = risk_matching(candidates)
            if risk_lines:
                return [
                    f"- Possible signals include distress-related language"
                    f"{_dates_span(risk_lines)}; see the linked entries.",
                    f"- Flagged lines in scope: {len(risk_lines)}.",
                ]
            return ["- Possible signals include: none detected in the scoped entries."]
        if category == "suggestion":
            bullets = []
            if homework:
                bullets.append(
                    f"- Keep the current cadence; {len(homework)} homework "
                    f"aggregate(s) recorded{_dates_span(homework)}."
                )
            if journals:
                themes = _top_words(journals)
                topic = f" around {', '.join(themes)}" if themes else ""
                bullets.append(f"- Review journal themes{topic} together in session.")
            if biometrics:
                bullets.append("- Relate task timing to the biometric patterns in scope.")
            if emotions:
                descriptors = _top_words_descriptors(emotions)
                if descriptors:
                    bullets.append(
                        f"- Explore frequent emotion states: {', '.join(descriptors)}."
                    )
            if not bullets:
                bullets.append("- Review the scoped entries before the next session.")
            return bullets[:5]
        # general
        populated = [name for name in _CONTEXT_SECTIONS if sections[name]]
        return [
            f"- {len(candidates)} data line(s) in scope across: {', '.join(populated)}."
        ]


def _top_words_descriptors(emotion_lines: list[str]) -> list[str]:
    counts: dict[str, int] = {}
    for line in emotion_lines:
        for descriptor in _DESCRIPTOR_RE.findall(line):
            counts[descriptor] = counts.get(descriptor, 0) + 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [d for d, _ in ranked[:2]]


def provider_from_env(env: dict[str, str] | None = None) -> CompletionProvider:
    """LLM_PROVIDER selects the provider (mock unless set to remote)."""
    env = dict(os.environ) if env is None else env
    if env.get("LLM_PROVIDER", "mock").lower() == "remote":
        return RemoteProvider(env.get("LLM_ENDPOINT"), env.get("LLM_API_KEY"))
    return MockProvider(scripts_dir=env.get("LLM_MOCK_SCRIPTS") or None)
