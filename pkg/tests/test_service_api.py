from __future__ import annotations

import json
from datetime import date

import pytest
from fastapi.testclient import TestClient

from caselens import analytics
from caselens.dashboard import OnboardingConfig
from caselens.gateway.contracts import NO_SUMMARY_TEXT
from caselens.gateway.providers import MockProvider
from caselens.records.documents import record_digest, validate_and_load
from caselens.service.app import create_app

from conftest import AS_OF

AS_OF_TEXT = "2025-04-20T12:00:00Z"


@pytest.fixture()
def client(tmp_path, elias_raw):
    app = create_app(store_path=tmp_path / "api.db", provider=MockProvider())
    with TestClient(app) as test_client:
        response = test_client.post("/clients", content=elias_raw)
        assert response.status_code == 200
        yield test_client


def put_config(client, **overrides):
    config = OnboardingConfig.from_dict(overrides).to_dict()
    response = client.put("/therapist/config", json=config)
    assert response.status_code == 200
    return response.json()


class TestRecords:
    def test_list_clients(self, client):
        assert client.get("/clients").json() == [
            {"record_id": "elias", "client_label": "Elias"}
        ]

    def test_validate_endpoint_reports_counts(self, client, elias_raw):
        response = client.post("/clients/validate", content=elias_raw)
        assert response.status_code == 200
        assert response.json()["counts"]["thought_records"] == 7

    def test_invalid_document_is_structured_400(self, client):
        bad = json.dumps({"schema_version": 1, "record_id": "x", "client_label": "",
                          "submissions": [{"entry_id": "s", "submitted_at": "2025-04-01T10:00:00Z",
                                           "homework_type": "journaling", "duration_minutes": 1,
                                           "self_rated_quality": 3, "mood_before": 11,
                                           "mood_after": 5, "body": "t"}]})
        response = client.post("/clients/validate", content=bad)
        assert response.status_code == 400
        payload = response.json()
        assert payload["code"] == "RangeError"
        assert payload["path"] == "$.submissions[0].mood_before"

    def test_entries_filter_kinds_and_range(self, client):
        response = client.get(
            "/clients/elias/entries",
            params={"kinds": "thought_record", "from": "2025-03-01", "to": "2025-04-30"},
        )
        entries = response.json()
        assert len(entries) == 7
        assert all(e["kind"] == "thought_record" for e in entries)

    def test_ingest_entry_roundtrip(self, client):
        response = client.post(
            "/clients/elias/entries",
            json={
                "kind": "emotion_log",
                "payload": {"date": "2025-04-20", "interval": "6am-10am", "descriptor": "Relaxed"},
            },
        )
        assert response.status_code == 200
        entry_id = response.json()["entry_id"]
        listed = client.get(
            "/clients/elias/entries", params={"kinds": "emotion_log"}
        ).json()
        assert any(e["data"]["entry_id"] == entry_id for e in listed)

    def test_unknown_client_is_structured_404(self, client):
        response = client.post("/clients/ghost/chat", json={"question": "hello?"})
        assert response.status_code == 404
        payload = response.json()
        assert payload["code"] == "UnknownRecord"
        assert "ghost" in payload["message"]


class TestAnalyticsParity:
    def test_completion_payload_equals_in_process_call(self, client, elias_raw):
        record = validate_and_load(elias_raw)
        window = (date(2025, 3, 31), date(2025, 4, 20))
        expected = analytics.completion_trend(record, window)
        payload = client.get(
            "/clients/elias/analytics/completion",
            params={"from": "2025-03-31", "to": "2025-04-20"},
        ).json()
        assert payload["per_day"] == {
            d.isoformat(): n for d, n in expected.per_day.items()
        }
        assert payload["per_week"] == expected.per_week
        assert payload["longest_streak"] == expected.longest_streak
        assert payload["current_streak"] == expected.current_streak
        assert payload["gaps"] == [
            [a.isoformat(), b.isoformat()] for a, b in expected.gaps
        ]

    def test_mood_parity(self, client, elias_raw):
        record = validate_and_load(elias_raw)
        window = (date(2025, 3, 31), date(2025, 4, 20))
        expected = analytics.mood_delta_series(record, window)
        payload = client.get(
            "/clients/elias/analytics/mood",
            params={"from": "2025-03-31", "to": "2025-04-20"},
        ).json()
        assert [p["delta"] for p in payload] == [p.delta for p in expected]

    def test_biometrics_and_reading(self, client, elias_raw):
        record = validate_and_load(elias_raw)
        expected = analytics.biometric_aggregate(
            record, (date(2025, 3, 31), date(2025, 4, 19))
        )
        payload = client.get(
            "/clients/elias/analytics/biometrics",
            params={"from": "2025-03-31", "to": "2025-04-19"},
        ).json()
        assert payload["text_block"] == expected.text_block
        reading = client.get("/clients/elias/analytics/reading").json()
        assert reading == {
            "finished": list(record.reading_materials.finished),
            "not_finished": list(record.reading_materials.not_finished),
        }

    def test_assessment_severity_payload(self, client):
        payload = client.get("/clients/elias/analytics/assessments").json()
        assert len(payload) == 1
        assessment = payload[0]
        assert assessment["instrument"] == "GAD7"
        assert assessment["total_band"] == "at_or_above"  # total 11 vs cutoff 10
        assert all(item["exceeded"] is False for item in assessment["items"])


class TestGenAiEndpoints:
    def test_summary_no_ai_level_returns_exact_text(self, client):
        put_config(client, summary_level="No AI Summary")
        response = client.post(
            "/clients/elias/summary", json={"activate": True, "as_of": AS_OF_TEXT}
        )
        assert response.status_code == 200
        payload = response.json()
        assert payload["text"] == NO_SUMMARY_TEXT
        assert payload["attempts"] == 0
        assert payload["anchors"] == []

    def test_detailed_summary_with_anchors(self, client):
        put_config(
            client,
            summary_level="Detailed Analysis",
            focus_areas=["cognitive_restructuring"],
        )
        payload = client.post(
            "/clients/elias/summary", json={"activate": True, "as_of": AS_OF_TEXT}
        ).json()
        assert payload["level"] == "Detailed Analysis"
        assert len(payload["sections"]) == 7
        assert payload["anchors"]
        resolve = client.get(
            f"/anchors/elias/{payload['anchors'][0]['entry_id']}",
            params={"hash": payload["anchors"][0]["excerpt_hash"]},
        ).json()
        assert resolve["stale"] is False

    def test_chat_and_routing_agree(self, client):
        question = "Show entries where sleep dropped before low-mood logs."
        routing = client.get(
            "/clients/elias/chat/routing", params={"q": question}
        ).json()
        answer = client.post(
            "/clients/elias/chat", json={"question": question, "as_of": AS_OF_TEXT}
        ).json()
        assert answer["routing"] == routing
        assert answer["category"] == routing["category"] == "biometric"

    def test_audit_roundtrip(self, client):
        put_config(client, summary_level="Detailed Analysis")
        summary = client.post(
            "/clients/elias/summary", json={"activate": True, "as_of": AS_OF_TEXT}
        ).json()
        report = client.post(
            "/audit",
            json={
                "record_id": "elias",
                "body": summary["body_with_anchors"],
                "anchors": summary["anchors"],
            },
        ).json()
        assert report["resolved_count"] == len(summary["anchors"])
        assert report["dangling"] == [] and report["stale"] == []

    def test_stale_anchor_after_goal_edit(self, client):
        goals = client.get("/clients/elias/goals").json()
        goal_id = goals[0]["data"]["goal_id"]
        before = client.get(f"/anchors/elias/{goal_id}").json()
        client.put(
            "/clients/elias/goals", json={"goal_id": goal_id, "status": "revised"}
        )
        after = client.get(
            f"/anchors/elias/{goal_id}", params={"hash": before["excerpt_hash"]}
        ).json()
        assert after["stale"] is True


class TestConfigAndLayout:
    def test_config_round_trip_with_versioning(self, client):
        first = put_config(client, summary_level="Basic Overview")
        second = put_config(client, summary_level="Detailed Analysis")
        assert second["version"] == first["version"] + 1
        current = client.get("/therapist/config").json()
        assert current["config"]["summary_level"] == "Detailed Analysis"

    def test_recommend_layout_display_mode_flow(self, client):
        put_config(
            client,
            summary_level="Detailed Analysis",
            aiChatAbilities=["raw_data_extraction"],
            side_functions=["messaging"],
        )
        recommendations = client.get("/widgets/recommend").json()
        ids = [w["widget_id"] for w in recommendations]
        assert "genai_summary" in ids and "messaging" in ids
        layout = client.put("/clients/elias/layout", json={"chosen": ids}).json()
        assert [w["widget_id"] for w in layout["widgets"]] == ids
        reloaded = client.get("/clients/elias/layout").json()
        assert reloaded == layout
        session = client.put(
            "/clients/elias/display-mode", json={"mode": "session", "overrides": {}}
        ).json()
        visible_kinds = {w["kind"] for w in session["visible"]}
        assert "genai_summary" not in visible_kinds
        clinician = client.put(
            "/clients/elias/display-mode", json={"mode": "clinician", "overrides": {}}
        ).json()
        assert {w["kind"] for w in clinician["visible"]} >= visible_kinds

    def test_unrecommended_choice_rejected(self, client):
        put_config(client, summary_level="No AI Summary")
        response = client.put(
            "/clients/elias/layout", json={"chosen": ["genai_summary"]}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "UnknownWidget"


class TestMessagesAndGoals:
    def test_post_and_list_messages(self, client):
        response = client.post(
            "/clients/elias/messages", json={"text": "See you Thursday."}
        )
        assert response.status_code == 200
        messages = client.get("/clients/elias/messages").json()
        assert any(m["data"]["text"] == "See you Thursday." for m in messages)

    def test_goal_upsert(self, client):
        created = client.put(
            "/clients/elias/goals", json={"text": "Practice breathing daily"}
        ).json()
        goals = client.get("/clients/elias/goals").json()
        assert any(g["data"]["goal_id"] == created["entry_id"] for g in goals)
        client.put(
            "/clients/elias/goals",
            json={"goal_id": created["entry_id"], "status": "achieved"},
        )
        goals = client.get("/clients/elias/goals").json()
        updated = next(g for g in goals if g["data"]["goal_id"] == created["entry_id"])
        assert updated["data"]["status"] == "achieved"


class TestCrossCutting:
    def test_gets_do_not_mutate_state(self, client, tmp_path):
        from caselens.records.store import RecordStore

        store = RecordStore(tmp_path / "api.db")
        before = record_digest(store.load("elias"))
        client.get("/clients")
        client.get("/clients/elias/entries")
        client.get("/clients/elias/analytics/completion")
        client.get("/clients/elias/analytics/reading")
        client.get("/widgets/recommend")
        client.get("/clients/elias/chat/routing", params={"q": "sleep?"})
        assert record_digest(store.load("elias")) == before

    def test_auth_token_enforced_when_configured(self, tmp_path, elias_raw):
        app = create_app(
            store_path=tmp_path / "auth.db", provider=MockProvider(), auth_token="sekrit"
        )
        with TestClient(app) as test_client:
            denied = test_client.get("/clients")
            assert denied.status_code == 401
            allowed = test_client.get(
                "/clients", headers={"Authorization": "Bearer sekrit"}
            )
            assert allowed.status_code == 200

    def test_timestamps_use_single_utc_format(self, client):
        put_config(client, summary_level="Basic Overview")
        payload = client.post(
            "/clients/elias/summary", json={"activate": True, "as_of": AS_OF_TEXT}
        ).json()
        import re

        assert re.fullmatch(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z", payload["generated_at"])
