"""Pydantic request/response models for the HTTP surface.

Entry payloads travel as kind-discriminated envelopes mirroring the canonical
document format; timestamps serialize in the single documented UTC format.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class ErrorPayload(BaseModel):
    code: str
    message: str
    path: Optional[str] = None


class ClientInfo(BaseModel):
    record_id: str
    client_label: str


class EntryEnvelope(BaseModel):
    kind: str
    data: dict[str, Any]


class IngestRequest(BaseModel):
    kind: str
    payload: dict[str, Any]


class IngestResponse(BaseModel):
    entry_id: str


class ValidateResponse(BaseModel):
    record_id: str
    client_label: str
    counts: dict[str, int]


class CompletionSeriesModel(BaseModel):
    window: tuple[str, str]
    per_day: dict[str, int]
    per_week: dict[str, int]
    per_type: dict[str, int]
    longest_streak: int
    current_streak: int
    gaps: list[tuple[str, str]]


class MoodPointModel(BaseModel):
    submitted_at: str
    homework_type: str
    mood_before: int
    mood_after: int
    delta: int


class MetricStatsModel(BaseModel):
    mean: float
    min: float
    max: float


class BiometricsModel(BaseModel):
    window: tuple[str, str]
    day_count: int
    stats: dict[str, MetricStatsModel]
    text_block: str


class ItemSeverityModel(BaseModel):
    text: str
    score: int
    threshold: Optional[int] = None
    exceeded: bool
    color_hint: str


class AssessmentSeverityModel(BaseModel):
    entry_id: str
    instrument: str
    administered_at: str
    items: list[ItemSeverityModel]
    total: int
    total_threshold: Optional[int] = None
    total_band: str
    total_color_hint: str


class ReadingModel(BaseModel):
    finished: list[str]
    not_finished: list[str]


class AnchorModel(BaseModel):
    record_id: str
    entry_id: str
    kind: str
    excerpt_hash: str


class SummaryActivation(BaseModel):
    activate: bool = True
    as_of: Optional[str] = None  # UTC timestamp; defaults to now


class SummarySectionModel(BaseModel):
    header: str
    body: str
    anchors: list[AnchorModel] = Field(default_factory=list)


class SummaryResponse(BaseModel):
    level: str
    text: str  # validated document text without anchor tokens
    body_with_anchors: str
    sections: list[SummarySectionModel] = Field(default_factory=list)
    anchors: list[AnchorModel] = Field(default_factory=list)
    generated_at: str
    attempts: int


class ChatRequestModel(BaseModel):
    question: str
    as_of: Optional[str] = None


class MatchedRuleModel(BaseModel):
    dimension: str
    value: str
    keyword: str


class RoutingModel(BaseModel):
    category: str
    scope: str
    matched_rules: list[MatchedRuleModel] = Field(default_factory=list)


class ChatResponse(BaseModel):
    insufficient: bool
    category: str
    scope: str
    routing: RoutingModel
    text: str
    body_with_anchors: str
    raw_data_block: Optional[list[str]] = None
    bullets: list[str] = Field(default_factory=list)
    anchors: list[AnchorModel] = Field(default_factory=list)
    generated_at: str
    attempts: int


class ResolveResponse(BaseModel):
    record_id: str
    entry_id: str
    kind: str
    stale: bool
    excerpt_hash: str
    entry: EntryEnvelope


class AuditRequest(BaseModel):
    record_id: str
    body: str
    anchors: list[AnchorModel]


class AuditResponse(BaseModel):
    resolved_count: int
    dangling: list[AnchorModel] = Field(default_factory=list)
    stale: list[AnchorModel] = Field(default_factory=list)


class ConfigResponse(BaseModel):
    version: int
    config: dict[str, Any]


class WidgetModel(BaseModel):
    widget_id: str
    kind: str
    requirement: str


class LayoutWidgetModel(BaseModel):
    widget_id: str
    kind: str
    clinician_visible: bool
    session_visible: bool


class LayoutPut(BaseModel):
    chosen: list[str]


class LayoutResponse(BaseModel):
    widgets: list[LayoutWidgetModel] = Field(default_factory=list)


class DisplayModePut(BaseModel):
    mode: str  # "clinician" | "session"
    overrides: dict[str, bool] = Field(default_factory=dict)


class DisplayModeResponse(BaseModel):
    mode: str
    overrides: dict[str, bool] = Field(default_factory=dict)
    visible: list[LayoutWidgetModel] = Field(default_factory=list)


class MessagePost(BaseModel):
    text: str
    direction: str = "to_client"
    sent_at: Optional[str] = None


class GoalPut(BaseModel):
    goal_id: Optional[str] = None
    text: Optional[str] = None
    status: Optional[str] = None
    created_at: Optional[str] = None
