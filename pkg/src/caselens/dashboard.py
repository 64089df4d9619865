"""Onboarding survey, widget recommendation, and dashboard layouts.

The flow runs in three steps: the therapist declares needs (focus areas,
homework types, assessments, AI preferences, side functions), the catalog
maps those needs to widget recommendations through a declarative requirements
table, and the chosen subset persists as an ordered layout with per-widget
visibility flags for the two display modes. Session mode hides the AI widgets
unless the therapist overrides them per widget.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import ConfigError, UnknownWidget
from .records.entities import HomeworkType, Instrument


class FocusArea(str, Enum):
    COGNITIVE_RESTRUCTURING = "cognitive_restructuring"
    MINDFULNESS = "mindfulness"
    BEHAVIORAL_ACTIVATION = "behavioral_activation"
    EXPOSURE_THERAPY = "exposure_therapy"
    JOURNALING_THOUGHT_RECORDS = "journaling_thought_records"
    OTHER = "other"


class SummaryLevel(str, Enum):
    BASIC = "Basic Overview"
    DETAILED = "Detailed Analysis"
    NONE = "No AI Summary"


class SummaryPriority(str, Enum):
    READING = "reading"
    HOMEWORK_TRENDS = "homework_trends"
    MENTAL_HEALTH = "mental_health"
    JOURNALING = "journaling"
    BIOMETRIC = "biometric"
    RISK = "risk"


class HomeworkSummaryFrequency(str, Enum):
    DAILY = "daily"
    WEEKLY = "weekly"
    NONE = "none"


class ChatAbility(str, Enum):
    RAW_DATA_EXTRACTION = "raw_data_extraction"
    DETAILED_EXPLANATIONS = "detailed_explanations"


class ClinicalInfo(str, Enum):
    BIOMETRIC_DATA = "biometric_data"
    EMOTION_LOGS = "emotion_logs"
    ACTIVITY_LOGS = "activity_logs"


class SideFunction(str, Enum):
    MESSAGING = "messaging"
    THERAPY_GOALS = "therapy_goals"


@dataclass(frozen=True)
class OnboardingConfig:
    focus_areas: tuple[FocusArea, ...] = ()
    focus_other_labels: tuple[str, ...] = ()  # free-text labels for "other"
    homework_types: tuple[HomeworkType, ...] = ()
    assessments: tuple[Instrument, ...] = ()
    assessment_other_labels: tuple[str, ...] = ()
    summary_level: SummaryLevel = SummaryLevel.BASIC
    summary_priorities: tuple[SummaryPriority, ...] = ()
    homework_summary: HomeworkSummaryFrequency = HomeworkSummaryFrequency.WEEKLY
    ai_chat_abilities: tuple[ChatAbility, ...] = ()
    clinical_info_display: tuple[ClinicalInfo, ...] = ()
    side_functions: tuple[SideFunction, ...] = ()
    # Optional expected submissions per week, per homework type; feeds gap
    # detection in lieu of a separate assignment ledger.
    expected_cadence: tuple[tuple[HomeworkType, int], ...] = ()

    def __post_init__(self):
        if len(set(self.summary_priorities)) != len(self.summary_priorities):
            raise ConfigError("summary_priorities must not contain duplicates")
        if FocusArea.OTHER in self.focus_areas and not all(
            label.strip() for label in self.focus_other_labels
        ):
            raise ConfigError("focus area 'other' labels must be non-empty")
        if Instrument.OTHER in self.assessments and not all(
            label.strip() for label in self.assessment_other_labels
        ):
            raise ConfigError("assessment 'other' labels must be non-empty")

    def focus_area_values(self) -> list[str]:
        values = []
        for area in self.focus_areas:
            if area is FocusArea.OTHER:
                values.extend(f"other:{label}" for label in self.focus_other_labels)
            else:
                values.append(area.value)
        return values

    def to_dict(self) -> dict:
        return {
            "focus_areas": [a.value for a in self.focus_areas],
            "focus_other_labels": list(self.focus_other_labels),
            "homework_types": [t.value for t in self.homework_types],
            "assessments": [a.value for a in self.assessments],
            "assessment_other_labels": list(self.assessment_other_labels),
            "summary_level": self.summary_level.value,
            "summary_priorities": [p.value for p in self.summary_priorities],
            "homework_summary": self.homework_summary.value,
            "aiChatAbilities": [a.value for a in self.ai_chat_abilities],
            "clinical_info_display": [c.value for c in self.clinical_info_display],
            "side_functions": [s.value for s in self.side_functions],
            "expected_cadence": {t.value: n for t, n in self.expected_cadence},
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "OnboardingConfig":
        def parse_list(key: str, enum_cls) -> tuple:
            values = raw.get(key, [])
            if not isinstance(values, list):
                raise ConfigError(f"{key} must be a list")
            try:
                return tuple(enum_cls(v) for v in values)
            except ValueError as exc:
                raise ConfigError(f"invalid value in {key}: {exc}") from None

        def parse_enum(key: str, enum_cls, default):
            value = raw.get(key)
            if value is None:
                return default
            try:
                return enum_cls(value)
            except ValueError:
                allowed = ", ".join(m.value for m in enum_cls)
                raise ConfigError(f"{key} = {value!r} not one of: {allowed}") from None

        cadence_raw = raw.get("expected_cadence", {})
        if not isinstance(cadence_raw, dict):
            raise ConfigError("expected_cadence must be an object")
        try:
            cadence = tuple(
                (HomeworkType(k), int(v)) for k, v in sorted(cadence_raw.items())
            )
        except ValueError as exc:
            raise ConfigError(f"invalid expected_cadence: {exc}") from None

        return cls(
            focus_areas=parse_list("focus_areas", FocusArea),
            focus_other_labels=tuple(raw.get("focus_other_labels", [])),
            homework_types=parse_list("homework_types", HomeworkType),
            assessments=parse_list("assessments", Instrument),
            assessment_other_labels=tuple(raw.get("assessment_other_labels", [])),
            summary_level=parse_enum("summary_level", SummaryLevel, SummaryLevel.BASIC),
            summary_priorities=parse_list("summary_priorities", SummaryPriority),
            homework_summary=parse_enum(
                "homework_summary", HomeworkSummaryFrequency, HomeworkSummaryFrequency.WEEKLY
            ),
            ai_chat_abilities=parse_list("aiChatAbilities", ChatAbility),
            clinical_info_display=parse_list("clinical_info_display", ClinicalInfo),
            side_functions=parse_list("side_functions", SideFunction),
            expected_cadence=cadence,
        )


class WidgetKind(str, Enum):
    HOMEWORK_OVERVIEW = "homework_overview"
    HEALTH_SIGNALS = "health_signals"
    ASSESSMENT_TRACKER = "assessment_tracker"
    GENAI_SUMMARY = "genai_summary"
    GENAI_CHAT = "genai_chat"
    MESSAGING = "messaging"
    THERAPY_GOALS = "therapy_goals"


AI_WIDGET_KINDS = frozenset({WidgetKind.GENAI_SUMMARY, WidgetKind.GENAI_CHAT})


@dataclass(frozen=True)
class WidgetCatalogEntry:
    widget_id: str
    kind: WidgetKind
    requirement: str  # declarative predicate name evaluated by the table below


# Requirements table: predicate name -> does this config activate the widget?
_REQUIREMENTS = {
    "always": lambda cfg: True,
    "clinical_info_selected": lambda cfg: bool(cfg.clinical_info_display),
    "assessments_selected": lambda cfg: bool(cfg.assessments),
    "summary_enabled": lambda cfg: cfg.summary_level is not SummaryLevel.NONE,
    "chat_abilities_selected": lambda cfg: bool(cfg.ai_chat_abilities),
    "messaging_selected": lambda cfg: SideFunction.MESSAGING in cfg.side_functions,
    "goals_selected": lambda cfg: SideFunction.THERAPY_GOALS in cfg.side_functions,
}

WIDGET_CATALOG: tuple[WidgetCatalogEntry, ...] = (
    WidgetCatalogEntry("homework_overview", WidgetKind.HOMEWORK_OVERVIEW, "always"),
    WidgetCatalogEntry("health_signals", WidgetKind.HEALTH_SIGNALS, "clinical_info_selected"),
    WidgetCatalogEntry("assessment_tracker", WidgetKind.ASSESSMENT_TRACKER, "assessments_selected"),
    WidgetCatalogEntry("genai_summary", WidgetKind.GENAI_SUMMARY, "summary_enabled"),
    WidgetCatalogEntry("genai_chat", WidgetKind.GENAI_CHAT, "chat_abilities_selected"),
    WidgetCatalogEntry("messaging", WidgetKind.MESSAGING, "messaging_selected"),
    WidgetCatalogEntry("therapy_goals", WidgetKind.THERAPY_GOALS, "goals_selected"),
)


def recommend_widgets(config: OnboardingConfig) -> list[WidgetCatalogEntry]:
    """Deterministic need-to-widget mapping over the catalog."""
    return [w for w in WIDGET_CATALOG if _REQUIREMENTS[w.requirement](config)]


@dataclass(frozen=True)
class LayoutWidget:
    widget_id: str
    kind: WidgetKind
    clinician_visible: bool = True
    session_visible: bool = True

    def to_dict(self) -> dict:
        return {
            "widget_id": self.widget_id,
            "kind": self.kind.value,
            "clinician_visible": self.clinician_visible,
            "session_visible": self.session_visible,
        }


@dataclass(frozen=True)
class DashboardLayout:
    widgets: tuple[LayoutWidget, ...] = ()

    def __post_init__(self):
        ids = [w.widget_id for w in self.widgets]
        if len(set(ids)) != len(ids):
            raise ConfigError("layout contains duplicate widget ids")
        for w in self.widgets:
            if w.session_visible and not w.clinician_visible:
                raise ConfigError(
                    f"widget {w.widget_id!r} visible in session but not clinician mode"
                )

    def to_dict(self) -> dict:
        return {"widgets": [w.to_dict() for w in self.widgets]}

    @classmethod
    def from_dict(cls, raw: dict) -> "DashboardLayout":
        widgets = []
        for item in raw.get("widgets", []):
            try:
                kind = WidgetKind(item["kind"])
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"invalid layout widget: {exc}") from None
            widgets.append(
                LayoutWidget(
                    widget_id=item.get("widget_id", kind.value),
                    kind=kind,
                    clinician_visible=bool(item.get("clinician_visible", True)),
                    session_visible=bool(item.get("session_visible", True)),
                )
            )
        return cls(widgets=tuple(widgets))


def apply_selection(
    recommendations: Sequence[WidgetCatalogEntry],
    chosen: Sequence[str],
) -> DashboardLayout:
    """Build a layout from a chosen, ordered subset of the recommendations.
    AI widgets default to hidden in session mode."""
    by_id = {w.widget_id: w for w in recommendations}
    widgets = []
    for widget_id in chosen:
        entry = by_id.get(widget_id)
        if entry is None:
            raise UnknownWidget(f"widget {widget_id!r} is not among the recommendations")
        widgets.append(
            LayoutWidget(
                widget_id=entry.widget_id,
                kind=entry.kind,
                clinician_visible=True,
                session_visible=entry.kind not in AI_WIDGET_KINDS,
            )
        )
    return DashboardLayout(widgets=tuple(widgets))


class DisplayMode(str, Enum):
    CLINICIAN = "clinician"
    SESSION = "session"


def set_display_mode(
    layout: DashboardLayout,
    mode: DisplayMode,
    overrides: dict[str, bool] | None = None,
) -> list[LayoutWidget]:
    """Visible widgets for a display mode. Clinician mode shows the full
    layout; session mode applies the per-widget session flags plus explicit
    overrides, and can never show more than clinician mode."""
    if mode is DisplayMode.CLINICIAN:
        return [w for w in layout.widgets if w.clinician_visible]
    overrides = overrides or {}
    visible = []
    for w in layout.widgets:
        wants = overrides.get(w.widget_id, w.session_visible)
        if wants and w.clinician_visible:
            visible.append(w)
    return visible
