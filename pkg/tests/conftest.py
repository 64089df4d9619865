from __future__ import annotations

from datetime import datetime, timezone
from importlib import resources

import pytest

from caselens.dashboard import (
    ChatAbility,
    FocusArea,
    OnboardingConfig,
    SummaryLevel,
    SummaryPriority,
)
from caselens.gateway.providers import Gateway, MockProvider
from caselens.records.documents import validate_and_load
from caselens.records.entities import HomeworkType
from caselens.records.store import RecordStore

AS_OF = datetime(2025, 4, 20, 12, 0, 0, tzinfo=timezone.utc)


@pytest.fixture(scope="session")
def elias_raw() -> str:
    return resources.files("caselens").joinpath("fixtures", "elias.json").read_text("utf-8")


@pytest.fixture()
def elias_record(elias_raw):
    return validate_and_load(elias_raw)


@pytest.fixture()
def store(tmp_path, elias_raw) -> RecordStore:
    record_store = RecordStore(tmp_path / "store.db")
    record_store.put_record(elias_raw)
    return record_store


@pytest.fixture()
def gateway() -> Gateway:
    return Gateway(MockProvider())


@pytest.fixture()
def detailed_config() -> OnboardingConfig:
    return OnboardingConfig(
        focus_areas=(FocusArea.COGNITIVE_RESTRUCTURING,),
        homework_types=(HomeworkType.THOUGHT_RECORD, HomeworkType.JOURNALING),
        summary_level=SummaryLevel.DETAILED,
        summary_priorities=(SummaryPriority.RISK, SummaryPriority.JOURNALING),
        ai_chat_abilities=(ChatAbility.RAW_DATA_EXTRACTION,),
    )


@pytest.fixture()
def basic_config() -> OnboardingConfig:
    return OnboardingConfig(summary_level=SummaryLevel.BASIC)


@pytest.fixture()
def no_summary_config() -> OnboardingConfig:
    return OnboardingConfig(summary_level=SummaryLevel.NONE)
