"""Strict validators that coerce raw model text into contracted structures.

Violations come back as data, never exceptions: the caller decides whether to
retry, and therapists get to see exactly why an output was rejected. Nothing
is repaired silently. The detailed summary contract is the seven fixed
headers in fixed order (an optional "Other Observations" may sit between the
risk section and the overall summary); the chat contract covers the exact
insufficiency string, the suggestion disclaimer and bullet cap, the
raw-data-block preference rule, and plain-text-only output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..dashboard import ChatAbility, OnboardingConfig, SummaryLevel
from ..pipeline.classifier import QuestionCategory
from .contracts import (
    INSUFFICIENT_TEXT,
    MAX_SUGGESTION_BULLETS,
    NO_DATA,
    NO_FOCUS_DATA_TEXT,
    NO_SUMMARY_TEXT,
    OPTIONAL_SUMMARY_HEADER,
    RAW_DATA_TITLE,
    SUGGESTION_DISCLAIMER,
    SUMMARY_HEADERS,
)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ViolationList:
    violations: tuple[Violation, ...]

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]

    def __len__(self) -> int:
        return len(self.violations)

    def __str__(self) -> str:
        return "; ".join(f"{v.code}: {v.message}" for v in self.violations)


@dataclass(frozen=True)
class SummarySection:
    header: str
    body: str


@dataclass(frozen=True)
class SummaryDocument:
    level: SummaryLevel
    sections: tuple[SummarySection, ...] = ()  # detailed only
    paragraph: str = ""  # basic only
    literal: str = ""  # none only: the exact no-summary text

    def text(self) -> str:
        if self.level is SummaryLevel.NONE:
            return self.literal
        if self.level is SummaryLevel.BASIC:
            return self.paragraph
        return "\n".join(f"{s.header}\n{s.body}\n" for s in self.sections).rstrip("\n")


_ABBREVIATIONS = ("e.g.", "i.e.", "etc.", "vs.", "cf.", "approx.", "dr.", "mr.", "ms.")
_TERMINATOR_RE = re.compile(r"[.!?]+(?=\s|$)")
_DECIMAL_RE = re.compile(r"(?<=\d)\.(?=\d)")


def sentence_count(text: str) -> int:
    """Terminator-counting heuristic with abbreviation and decimal guards."""
    lowered = text.lower()
    for abbr in _ABBREVIATIONS:
        lowered = lowered.replace(abbr, abbr.replace(".", ""))
    lowered = _DECIMAL_RE.sub("", lowered)
    return len(_TERMINATOR_RE.findall(lowered))


def _is_table_line(line: str) -> bool:
    return line.count("|") >= 2


def _plain_text_violations(lines: list[str]) -> list[Violation]:
    out = []
    for line in lines:
        if line.lstrip().startswith("#"):
            out.append(Violation("markdown_heading", f"markdown heading found: {line!r}"))
        if _is_table_line(line):
            out.append(Violation("table_detected", f"table-like line found: {line!r}"))
    return out


_ALL_HEADERS = (*SUMMARY_HEADERS, OPTIONAL_SUMMARY_HEADER)


def validate_summary(
    raw: str, config: OnboardingConfig
) -> SummaryDocument | ViolationList:
    """Check raw model text against the summary contract for the configured
    level; returns the parsed document or the full list of violations."""
    level = config.summary_level
    if level is SummaryLevel.NONE:
        if raw.rstrip("\n") == NO_SUMMARY_TEXT:
            return SummaryDocument(level=level, literal=NO_SUMMARY_TEXT)
        return ViolationList(
            (
                Violation(
                    "not_exact_no_summary_text",
                    f"level 'No AI Summary' accepts only {NO_SUMMARY_TEXT!r}",
                ),
            )
        )

    lines = raw.split("\n")
    violations = _plain_text_violations(lines)

    if level is SummaryLevel.BASIC:
        body = raw.strip()
        if not body:
            violations.append(Violation("empty_output", "basic overview is empty"))
        if "\n\n" in raw.strip():
            violations.append(
                Violation("multiple_paragraphs", "basic overview must be one paragraph")
            )
        for line in lines:
            if line.strip() in _ALL_HEADERS:
                violations.append(
                    Violation(
                        "heading_in_basic",
                        f"basic overview must not use headings, found {line.strip()!r}",
                    )
                )
        if violations:
            return ViolationList(tuple(violations))
        return SummaryDocument(level=level, paragraph=body)

    # Detailed Analysis
    found: list[tuple[int, str]] = [
        (i, line.strip()) for i, line in enumerate(lines) if line.strip() in _ALL_HEADERS
    ]
    seen: dict[str, int] = {}
    for _, header in found:
        seen[header] = seen.get(header, 0) + 1
    for header, count in seen.items():
        if count > 1:
            violations.append(
                Violation("duplicate_header", f"header appears {count} times: {header!r}")
            )
    for header in SUMMARY_HEADERS:
        if header not in seen:
            violations.append(Violation("missing_header", f"missing header: {header!r}"))

    appearance = [header for _, header in found]
    required_appearance = [h for h in appearance if h in SUMMARY_HEADERS]
    expected = [h for h in SUMMARY_HEADERS if h in seen]
    if required_appearance != expected and not any(
        v.code == "duplicate_header" for v in violations
    ):
        for got, want in zip(required_appearance, expected):
            if got != want:
                violations.append(
                    Violation(
                        "header_order",
                        f"expected {want!r} before {got!r} (fixed section order)",
                    )
                )
                break
    if OPTIONAL_SUMMARY_HEADER in seen:
        idx = appearance.index(OPTIONAL_SUMMARY_HEADER)
        before_ok = idx > 0 and appearance[idx - 1] == SUMMARY_HEADERS[-2]
        after_ok = idx + 1 < len(appearance) and appearance[idx + 1] == SUMMARY_HEADERS[-1]
        if not (before_ok and after_ok):
            violations.append(
                Violation(
                    "optional_section_position",
                    f"{OPTIONAL_SUMMARY_HEADER!r} is only accepted between "
                    f"{SUMMARY_HEADERS[-2]!r} and {SUMMARY_HEADERS[-1]!r}",
                )
            )

    if found and any(line.strip() for line in lines[: found[0][0]]):
        violations.append(
            Violation("preamble_text", "text before the first section header")
        )

    sections: list[SummarySection] = []
    for pos, (line_index, header) in enumerate(found):
        end = found[pos + 1][0] if pos + 1 < len(found) else len(lines)
        body = "\n".join(lines[line_index + 1 : end]).strip()
        if not body:
            violations.append(
                Violation("empty_section", f"section {header!r} has no body (use 'No data')")
            )
        sections.append(SummarySection(header=header, body=body))

    for section in sections:
        if section.header == SUMMARY_HEADERS[-1] and section.body not in ("", NO_DATA):
            count = sentence_count(section.body)
            if count not in (1, 2):
                violations.append(
                    Violation(
                        "overall_summary_length",
                        f"{SUMMARY_HEADERS[-1]!r} must be 1-2 sentences, counted {count}",
                    )
                )

    if violations:
        return ViolationList(tuple(violations))
    return SummaryDocument(level=level, sections=tuple(sections))


@dataclass(frozen=True)
class ChatValidationContext:
    """What the validator needs to know about the request and the retrieval
    outcome; carried by the chat engine, not parsed from model output."""

    category: QuestionCategory
    abilities: tuple[ChatAbility, ...]
    evidence_present: bool
    focus_areas_configured: bool
    focus_evidence_present: bool


@dataclass(frozen=True)
class ChatAnswer:
    category: QuestionCategory
    insufficient: bool
    raw_data_block: tuple[str, ...] | None
    body_bullets: tuple[str, ...]
    text: str

    @property
    def disclaimer_present(self) -> bool:
        return self.text.split("\n", 1)[0] == SUGGESTION_DISCLAIMER


# Unhedged diagnostic language rejected in risk answers (documented heuristic).
RISK_UNHEDGED_TERMS: tuple[str, ...] = (
    "diagnos",
    "certainly has",
    "definitely has",
    "will harm",
    "will attempt",
    "is suffering from",
)


def validate_chat(
    raw: str, ctx: ChatValidationContext, config: OnboardingConfig
) -> ChatAnswer | ViolationList:
    if raw.rstrip("\n") == INSUFFICIENT_TEXT:
        return ChatAnswer(
            category=ctx.category,
            insufficient=True,
            raw_data_block=None,
            body_bullets=(),
            text=INSUFFICIENT_TEXT,
        )

    lines = raw.split("\n")
    violations = _plain_text_violations(lines)

    raw_block: list[str] | None = None
    body_bullets: list[str] = []
    in_raw_block = False
    for i, line in enumerate(lines):
        stripped = line.strip()
        if stripped == RAW_DATA_TITLE:
            if raw_block is not None:
                violations.append(
                    Violation("duplicate_raw_data_block", "raw data block appears twice")
                )
            raw_block = []
            in_raw_block = True
            continue
        if in_raw_block:
            if stripped.startswith("- "):
                raw_block.append(stripped[2:])
                continue
            in_raw_block = False
        if stripped.startswith("- "):
            body_bullets.append(stripped[2:])

    ability_on = ChatAbility.RAW_DATA_EXTRACTION in ctx.abilities
    if raw_block is not None and not ability_on:
        violations.append(
            Violation(
                "raw_data_block_forbidden",
                "raw data block present but the preference is off",
            )
        )
    if ability_on and ctx.evidence_present and raw_block is None:
        violations.append(
            Violation(
                "raw_data_block_missing",
                "raw data extraction is enabled and evidence exists, but no "
                f"{RAW_DATA_TITLE!r} block is present",
            )
        )

    if ctx.category is QuestionCategory.SUGGESTION:
        if lines[0] != SUGGESTION_DISCLAIMER:
            violations.append(
                Violation(
                    "missing_disclaimer",
                    "suggestion answers must start with the exact disclaimer line",
                )
            )
        if len(body_bullets) > MAX_SUGGESTION_BULLETS:
            violations.append(
                Violation(
                    "bullet_count",
                    f"suggestion answers allow fewer than 6 bullets, "
                    f"counted {len(body_bullets)}",
                )
            )

    if not body_bullets:
        violations.append(
            Violation("no_bullets", "answers must use concise bullet points")
        )

    if ctx.category is QuestionCategory.RISK:
        lowered = raw.lower()
        for term in RISK_UNHEDGED_TERMS:
            if term in lowered:
                violations.append(
                    Violation(
                        "unhedged_risk_language",
                        f"risk answers must stay calibrated; found {term!r}",
                    )
                )

    if (
        ctx.focus_areas_configured
        and not ctx.focus_evidence_present
        and NO_FOCUS_DATA_TEXT not in raw
    ):
        violations.append(
            Violation(
                "missing_focus_note",
                f"no focus-area evidence in scope: answer must state "
                f"{NO_FOCUS_DATA_TEXT!r}",
            )
        )

    if violations:
        return ViolationList(tuple(violations))
    return ChatAnswer(
        category=ctx.category,
        insufficient=False,
        raw_data_block=tuple(raw_block) if raw_block is not None else None,
        body_bullets=tuple(body_bullets),
        text=raw,
    )
