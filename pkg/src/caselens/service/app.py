"""HTTP surface: thin, validated delegation to the core package.

Every endpoint mirrors an in-process operation one-to-one (the parity the
test suite asserts); errors map to structured {code, message, path} payloads.
Reads never mutate state. Auth is a single static bearer token from the
environment, explicitly a stub: clinical deployments need real auth, which is
out of scope here.
"""

from __future__ import annotations

import os
from datetime import date, datetime, timezone
from pathlib import Path

from fastapi import Depends, FastAPI, Query, Request
from fastapi.responses import JSONResponse

from .. import analytics
from ..dashboard import (
    DashboardLayout,
    DisplayMode,
    OnboardingConfig,
    apply_selection,
    recommend_widgets,
    set_display_mode,
)
from ..engines.chat import AnchoredChatAnswer, ChatEngine
from ..engines.summary import AnchoredSummary, SummaryEngine
from ..errors import (
    CaselensError,
    ConfigError,
    DanglingAnchor,
    GenerationFailed,
    ProviderTimeout,
    ProviderUnavailable,
    QuotaExceeded,
    SchemaError,
    UnknownRecord,
    ValidationError,
)
from ..gateway.providers import Gateway, provider_from_env
from ..provenance import AnchoredText, ProvenanceAnchor, audit_document, resolve
from ..records.documents import entry_digest, entry_to_dict, format_ts, parse_ts
from ..records.entities import GoalStatus, Message, MessageDirection, TherapyGoal
from ..records.documents import parse_entry_payload
from ..records.store import RecordStore
from . import models

_STATUS_BY_ERROR = {
    UnknownRecord: 404,
    DanglingAnchor: 404,
    ProviderUnavailable: 503,
    ProviderTimeout: 503,
    QuotaExceeded: 503,
    GenerationFailed: 502,
}

CONFIG_KEY = "therapist_config"


def _status_for(exc: CaselensError) -> int:
    for cls, status in _STATUS_BY_ERROR.items():
        if isinstance(exc, cls):
            return status
    return 400


def _parse_as_of(value: str | None) -> datetime | None:
    if value is None:
        return None
    return parse_ts(value, "$.as_of")


def _parse_day(value: str | None, param: str) -> date | None:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise SchemaError(f"invalid date {value!r} for {param}", f"$.{param}") from None


def _envelope(entry) -> models.EntryEnvelope:
    return models.EntryEnvelope(kind=entry.kind, data=entry_to_dict(entry))


def _anchor_model(anchor: ProvenanceAnchor) -> models.AnchorModel:
    return models.AnchorModel(
        record_id=anchor.record_id,
        entry_id=anchor.entry_id,
        kind=anchor.kind,
        excerpt_hash=anchor.excerpt_hash,
    )


def _summary_response(result: AnchoredSummary) -> models.SummaryResponse:
    sections = [
        models.SummarySectionModel(
            header=s.header,
            body=s.body,
            anchors=[_anchor_model(a) for a in result.section_anchors.get(s.header, ())],
        )
        for s in result.doc.sections
    ]
    return models.SummaryResponse(
        level=result.doc.level.value,
        text=result.doc.text(),
        body_with_anchors=result.anchored.body,
        sections=sections,
        anchors=[_anchor_model(a) for a in result.anchored.anchors],
        generated_at=format_ts(result.generated_at),
        attempts=result.attempts,
    )


def _chat_response(result: AnchoredChatAnswer) -> models.ChatResponse:
    routing = models.RoutingModel(
        category=result.classification.category.value,
        scope=result.classification.scope.value,
        matched_rules=[
            models.MatchedRuleModel(dimension=r.dimension, value=r.value, keyword=r.keyword)
            for r in result.classification.matched_rules
        ],
    )
    return models.ChatResponse(
        insufficient=result.answer.insufficient,
        category=result.answer.category.value,
        scope=result.classification.scope.value,
        routing=routing,
        text=result.answer.text,
        body_with_anchors=result.anchored.body,
        raw_data_block=(
            list(result.answer.raw_data_block)
            if result.answer.raw_data_block is not None
            else None
        ),
        bullets=list(result.answer.body_bullets),
        anchors=[_anchor_model(a) for a in result.anchored.anchors],
        generated_at=format_ts(result.generated_at),
        attempts=result.attempts,
    )


def create_app(
    store_path: str | Path | None = None,
    provider=None,
    auth_token: str | None = None,
    retry_budget: int = 2,
) -> FastAPI:
    store_path = store_path or os.environ.get("STORE_PATH", "caselens.db")
    auth_token = auth_token if auth_token is not None else os.environ.get("AUTH_TOKEN")
    store = RecordStore(store_path)
    gateway = Gateway(provider or provider_from_env())
    summary_engine = SummaryEngine(store, gateway, retry_budget=retry_budget)
    chat_engine = ChatEngine(store, gateway, retry_budget=retry_budget)

    async def require_auth(request: Request):
        if not auth_token:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {auth_token}":
            raise ConfigError("missing or invalid bearer token", "$.authorization")

    app = FastAPI(title="caselens", dependencies=[Depends(require_auth)])
    app.state.store = store
    app.state.gateway = gateway
    app.state.summary_engine = summary_engine
    app.state.chat_engine = chat_engine

    frontend_dist = os.environ.get("CASELENS_FRONTEND")
    if frontend_dist and Path(frontend_dist).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=frontend_dist, html=True), name="app")

    @app.exception_handler(CaselensError)
    async def caselens_error_handler(request: Request, exc: CaselensError):
        status = 401 if exc.path == "$.authorization" else _status_for(exc)
        payload = models.ErrorPayload(code=exc.code, message=exc.message, path=exc.path)
        body = payload.model_dump()
        if isinstance(exc, GenerationFailed) and exc.violations is not None:
            body["violations"] = [
                {"code": v.code, "message": v.message} for v in exc.violations.violations
            ]
        return JSONResponse(status_code=status, content=body)

    def current_config() -> OnboardingConfig:
        stored = store.get_document(CONFIG_KEY)
        return OnboardingConfig.from_dict(stored or {})

    def record_window(record_id: str, from_: str | None, to: str | None):
        record = store.load(record_id)
        start = _parse_day(from_, "from")
        end = _parse_day(to, "to")
        if start is None or end is None:
            entries = list(record.iter_entries())
            if entries:
                first = entries[0].occurred_at.date()
                last = entries[-1].occurred_at.date()
            else:
                first = last = datetime.now(timezone.utc).date()
            start = start or first
            end = end or last
        return record, (start, end)

    # -- records --------------------------------------------------------------

    @app.get("/clients", response_model=list[models.ClientInfo])
    def list_clients():
        return [
            models.ClientInfo(record_id=r, client_label=label)
            for r, label in store.list_clients()
        ]

    @app.post("/clients", response_model=models.ValidateResponse)
    async def put_client(request: Request):
        raw = (await request.body()).decode("utf-8")
        record = store.put_record(raw)
        return _validate_response(record)

    @app.post("/clients/validate", response_model=models.ValidateResponse)
    async def validate_client(request: Request):
        from ..records.documents import validate_and_load

        raw = (await request.body()).decode("utf-8")
        return _validate_response(validate_and_load(raw))

    def _validate_response(record) -> models.ValidateResponse:
        counts = {
            "submissions": len(record.submissions),
            "thought_records": sum(
                1 for s in record.submissions if s.homework_type.value == "thought_record"
            ),
            "emotion_logs": len(record.emotion_logs),
            "activity_logs": len(record.activity_logs),
            "assessments": len(record.assessments),
            "biometric_days": len(record.biometric_days),
            "goals": len(record.goals),
            "messages": len(record.messages),
        }
        return models.ValidateResponse(
            record_id=record.record_id, client_label=record.client_label, counts=counts
        )

    @app.get("/clients/{record_id}/entries", response_model=list[models.EntryEnvelope])
    def list_entries(
        record_id: str,
        kinds: str | None = None,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
    ):
        kind_set = {k.strip() for k in kinds.split(",") if k.strip()} if kinds else None
        start = _parse_day(from_, "from")
        end = _parse_day(to, "to")
        date_range = None
        if start is not None or end is not None:
            date_range = (start or date.min, end or date.max)
        entries = store.list_entries(record_id, kinds=kind_set, date_range=date_range)
        return [_envelope(e) for e in entries]

    @app.post("/clients/{record_id}/entries", response_model=models.IngestResponse)
    def ingest_entry(record_id: str, body: models.IngestRequest):
        if not store.exists(record_id):
            raise UnknownRecord(f"no record {record_id!r}")
        entry = parse_entry_payload(body.kind, body.payload)
        entry_id = store.ingest_entry(record_id, entry)
        return models.IngestResponse(entry_id=entry_id)

    # -- analytics ------------------------------------------------------------

    @app.get(
        "/clients/{record_id}/analytics/completion",
        response_model=models.CompletionSeriesModel,
    )
    def analytics_completion(
        record_id: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
    ):
        record, window = record_window(record_id, from_, to)
        series = analytics.completion_trend(record, window)
        return models.CompletionSeriesModel(
            window=(window[0].isoformat(), window[1].isoformat()),
            per_day={d.isoformat(): n for d, n in series.per_day.items()},
            per_week=series.per_week,
            per_type=series.per_type,
            longest_streak=series.longest_streak,
            current_streak=series.current_streak,
            gaps=[(a.isoformat(), b.isoformat()) for a, b in series.gaps],
        )

    @app.get(
        "/clients/{record_id}/analytics/mood", response_model=list[models.MoodPointModel]
    )
    def analytics_mood(
        record_id: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
        homework_type: str | None = None,
    ):
        from ..records.entities import HomeworkType

        record, window = record_window(record_id, from_, to)
        hw_filter = None
        if homework_type is not None:
            try:
                hw_filter = HomeworkType(homework_type)
            except ValueError:
                raise SchemaError(
                    f"unknown homework_type {homework_type!r}", "$.homework_type"
                ) from None
        series = analytics.mood_delta_series(record, window, hw_filter)
        return [
            models.MoodPointModel(
                submitted_at=p.submitted_at,
                homework_type=p.homework_type,
                mood_before=p.mood_before,
                mood_after=p.mood_after,
                delta=p.delta,
            )
            for p in series
        ]

    @app.get(
        "/clients/{record_id}/analytics/biometrics", response_model=models.BiometricsModel
    )
    def analytics_biometrics(
        record_id: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
    ):
        record, window = record_window(record_id, from_, to)
        agg = analytics.biometric_aggregate(record, window)
        return models.BiometricsModel(
            window=(window[0].isoformat(), window[1].isoformat()),
            day_count=agg.day_count,
            stats={
                k: models.MetricStatsModel(mean=v.mean, min=v.min, max=v.max)
                for k, v in agg.stats.items()
            },
            text_block=agg.text_block,
        )

    @app.get(
        "/clients/{record_id}/analytics/assessments",
        response_model=list[models.AssessmentSeverityModel],
    )
    def analytics_assessments(
        record_id: str,
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = None,
    ):
        record, window = record_window(record_id, from_, to)
        start, end = window
        out = []
        for result in record.assessments:
            day = result.administered_at.date()
            if day < start or day > end:
                continue
            bands = analytics.assessment_severity(result)
            out.append(
                models.AssessmentSeverityModel(
                    entry_id=result.entry_id,
                    instrument=result.instrument_label or result.instrument.value,
                    administered_at=format_ts(result.administered_at),
                    items=[
                        models.ItemSeverityModel(
                            text=i.text,
                            score=i.score,
                            threshold=i.threshold,
                            exceeded=i.exceeded,
                            color_hint=i.color_hint,
                        )
                        for i in bands.items
                    ],
                    total=bands.total,
                    total_threshold=bands.total_threshold,
                    total_band=bands.total_band,
                    total_color_hint=bands.total_color_hint,
                )
            )
        return out

    @app.get("/clients/{record_id}/analytics/reading", response_model=models.ReadingModel)
    def analytics_reading(record_id: str):
        reading = analytics.reading_overview(store.load(record_id))
        return models.ReadingModel(
            finished=list(reading.finished), not_finished=list(reading.not_finished)
        )

    # -- GenAI paths ----------------------------------------------------------

    @app.post("/clients/{record_id}/summary", response_model=models.SummaryResponse)
    def generate_summary(record_id: str, body: models.SummaryActivation):
        if not body.activate:
            raise ValidationError("summary endpoint requires activate=true", "$.activate")
        result = summary_engine.generate_summary(
            record_id, current_config(), _parse_as_of(body.as_of)
        )
        return _summary_response(result)

    @app.post("/clients/{record_id}/chat", response_model=models.ChatResponse)
    def chat(record_id: str, body: models.ChatRequestModel):
        result = chat_engine.answer(
            record_id, body.question, current_config(), _parse_as_of(body.as_of)
        )
        return _chat_response(result)

    @app.get("/clients/{record_id}/chat/routing", response_model=models.RoutingModel)
    def chat_routing(record_id: str, q: str):
        explanation = chat_engine.explain_routing(q)
        return models.RoutingModel(
            category=explanation.category.value,
            scope=explanation.scope.value,
            matched_rules=[
                models.MatchedRuleModel(
                    dimension=r.dimension, value=r.value, keyword=r.keyword
                )
                for r in explanation.matched_rules
            ],
        )

    # -- provenance -----------------------------------------------------------

    @app.get("/anchors/{record_id}/{entry_id}", response_model=models.ResolveResponse)
    def resolve_anchor(record_id: str, entry_id: str, hash: str | None = None):
        record = store.load(record_id)
        entry = record.entry_by_id(entry_id)
        if entry is None:
            raise DanglingAnchor(f"entry {entry_id!r} not found in record {record_id!r}")
        current_hash = entry_digest(entry)
        anchor = ProvenanceAnchor(
            record_id=record_id,
            entry_id=entry_id,
            kind=entry.kind,
            excerpt_hash=hash or current_hash,
        )
        resolution = resolve(store, anchor)
        return models.ResolveResponse(
            record_id=record_id,
            entry_id=entry_id,
            kind=entry.kind,
            stale=resolution.stale,
            excerpt_hash=current_hash,
            entry=_envelope(resolution.entry),
        )

    @app.post("/audit", response_model=models.AuditResponse)
    def audit(body: models.AuditRequest):
        anchors = tuple(
            ProvenanceAnchor(
                record_id=a.record_id,
                entry_id=a.entry_id,
                kind=a.kind,
                excerpt_hash=a.excerpt_hash,
            )
            for a in body.anchors
        )
        report = audit_document(AnchoredText(body=body.body, anchors=anchors), store)
        return models.AuditResponse(
            resolved_count=report.resolved_count,
            dangling=[_anchor_model(a) for a in report.dangling],
            stale=[_anchor_model(a) for a in report.stale],
        )

    # -- configuration / widgets ----------------------------------------------

    @app.get("/therapist/config", response_model=models.ConfigResponse)
    def get_config():
        stored = store.get_document(CONFIG_KEY)
        config = OnboardingConfig.from_dict(stored or {})
        version = store.get_document(f"{CONFIG_KEY}:version") or {"version": 0}
        return models.ConfigResponse(version=version["version"], config=config.to_dict())

    @app.put("/therapist/config", response_model=models.ConfigResponse)
    def put_config(body: dict):
        config = OnboardingConfig.from_dict(body)
        version = store.put_document(CONFIG_KEY, config.to_dict())
        store.put_document(f"{CONFIG_KEY}:version", {"version": version})
        return models.ConfigResponse(version=version, config=config.to_dict())

    @app.get("/widgets/recommend", response_model=list[models.WidgetModel])
    def widgets_recommend():
        return [
            models.WidgetModel(
                widget_id=w.widget_id, kind=w.kind.value, requirement=w.requirement
            )
            for w in recommend_widgets(current_config())
        ]

    def _layout_response(layout: DashboardLayout) -> models.LayoutResponse:
        return models.LayoutResponse(
            widgets=[
                models.LayoutWidgetModel(
                    widget_id=w.widget_id,
                    kind=w.kind.value,
                    clinician_visible=w.clinician_visible,
                    session_visible=w.session_visible,
                )
                for w in layout.widgets
            ]
        )

    def _stored_layout(record_id: str) -> DashboardLayout:
        stored = store.get_document(f"layout:{record_id}")
        if stored is None:
            recommendations = recommend_widgets(current_config())
            return apply_selection(recommendations, [w.widget_id for w in recommendations])
        return DashboardLayout.from_dict(stored)

    @app.get("/clients/{record_id}/layout", response_model=models.LayoutResponse)
    def get_layout(record_id: str):
        if not store.exists(record_id):
            raise UnknownRecord(f"no record {record_id!r}")
        return _layout_response(_stored_layout(record_id))

    @app.put("/clients/{record_id}/layout", response_model=models.LayoutResponse)
    def put_layout(record_id: str, body: models.LayoutPut):
        if not store.exists(record_id):
            raise UnknownRecord(f"no record {record_id!r}")
        layout = apply_selection(recommend_widgets(current_config()), body.chosen)
        store.put_document(f"layout:{record_id}", layout.to_dict())
        return _layout_response(layout)

    @app.put(
        "/clients/{record_id}/display-mode", response_model=models.DisplayModeResponse
    )
    def put_display_mode(record_id: str, body: models.DisplayModePut):
        if not store.exists(record_id):
            raise UnknownRecord(f"no record {record_id!r}")
        try:
            mode = DisplayMode(body.mode)
        except ValueError:
            raise SchemaError(f"mode must be clinician or session, got {body.mode!r}", "$.mode")
        store.put_document(
            f"display_mode:{record_id}", {"mode": mode.value, "overrides": body.overrides}
        )
        visible = set_display_mode(_stored_layout(record_id), mode, body.overrides)
        return models.DisplayModeResponse(
            mode=mode.value,
            overrides=body.overrides,
            visible=_layout_response(DashboardLayout(widgets=tuple(visible))).widgets,
        )

    @app.get(
        "/clients/{record_id}/display-mode", response_model=models.DisplayModeResponse
    )
    def get_display_mode(record_id: str):
        if not store.exists(record_id):
            raise UnknownRecord(f"no record {record_id!r}")
        stored = store.get_document(f"display_mode:{record_id}") or {
            "mode": "clinician",
            "overrides": {},
        }
        mode = DisplayMode(stored["mode"])
        overrides = stored.get("overrides", {})
        visible = set_display_mode(_stored_layout(record_id), mode, overrides)
        return models.DisplayModeResponse(
            mode=mode.value,
            overrides=overrides,
            visible=_layout_response(DashboardLayout(widgets=tuple(visible))).widgets,
        )

    # -- messaging / goals ------------------------------------------------------

    @app.post("/clients/{record_id}/messages", response_model=models.IngestResponse)
    def post_message(record_id: str, body: models.MessagePost):
        if not store.exists(record_id):
            raise UnknownRecord(f"no record {record_id!r}")
        try:
            direction = MessageDirection(body.direction)
        except ValueError:
            raise SchemaError(f"invalid direction {body.direction!r}", "$.direction")
        if not body.text.strip():
            raise ValidationError("message text must be non-empty", "$.text")
        sent_at = (
            parse_ts(body.sent_at, "$.sent_at")
            if body.sent_at
            else datetime.now(timezone.utc)
        )
        message = Message(message_id="", sent_at=sent_at, direction=direction, text=body.text)
        return models.IngestResponse(entry_id=store.ingest_entry(record_id, message))

    @app.get("/clients/{record_id}/messages", response_model=list[models.EntryEnvelope])
    def get_messages(record_id: str):
        record = store.load(record_id)
        return [_envelope(m) for m in record.messages]

    @app.get("/clients/{record_id}/goals", response_model=list[models.EntryEnvelope])
    def get_goals(record_id: str):
        record = store.load(record_id)
        return [_envelope(g) for g in record.goals]

    @app.put("/clients/{record_id}/goals", response_model=models.IngestResponse)
    def put_goal(record_id: str, body: models.GoalPut):
        record = store.load(record_id)
        if body.goal_id:
            changes = {}
            if body.text is not None:
                changes["text"] = body.text
            if body.status is not None:
                try:
                    changes["status"] = GoalStatus(body.status)
                except ValueError:
                    raise SchemaError(f"invalid status {body.status!r}", "$.status")
            if not changes:
                raise ValidationError("goal update requires text or status", "$")
            store.edit_entry(record_id, body.goal_id, **changes)
            return models.IngestResponse(entry_id=body.goal_id)
        if not body.text or not body.text.strip():
            raise ValidationError("new goals require text", "$.text")
        try:
            status = GoalStatus(body.status) if body.status else GoalStatus.ACTIVE
        except ValueError:
            raise SchemaError(f"invalid status {body.status!r}", "$.status")
        created = (
            parse_ts(body.created_at, "$.created_at")
            if body.created_at
            else datetime.now(timezone.utc)
        )
        goal = TherapyGoal(goal_id="", text=body.text, created_at=created, status=status)
        del record
        return models.IngestResponse(entry_id=store.ingest_entry(record_id, goal))

    return app
