"""Shared test utilities: deterministic random record generation.

Records are built as canonical documents and pushed through validate_and_load
so every generated record provably satisfies the schema invariants.
"""

from __future__ import annotations

import json
import random
from datetime import date, timedelta

from caselens.records.documents import validate_and_load
from caselens.records.entities import ClientRecord

HOMEWORK_TYPES = [
    "thought_record",
    "journaling",
    "gratitude_journal",
    "mood_tracking",
    "relaxation_breathing",
    "behavioral_experiment",
    "activity_scheduling",
    "exposure_task",
    "mindfulness_practice",
]
DESCRIPTORS = ["Energetic", "Overwhelmed", "Sleepy", "Enthusiastic", "Bored", "Relaxed"]
INTERVALS = ["6am-10am", "10am-2pm", "2pm-6pm", "6pm-10pm"]
BLOCKS = ["Morning", "Afternoon", "Night"]
WORDS = (
    "advisor deadline seminar draft revision meeting presentation campus library "
    "coffee walk garden recipe novel puzzle concert museum budget travel workshop"
).split()


def _sentence(rng: random.Random, n: int = 6) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(n)).capitalize() + "."


def random_document(
    rng: random.Random,
    record_id: str,
    n_days: int = 90,
    end_day: date = date(2025, 4, 20),
) -> dict:
    start = end_day - timedelta(days=n_days - 1)

    def day(offset: int) -> str:
        return (start + timedelta(days=offset)).isoformat()

    submissions = []
    for i in range(rng.randint(0, 35)):
        hw_type = rng.choice(HOMEWORK_TYPES)
        if hw_type == "thought_record":
            body = {
                "trigger_situation": _sentence(rng),
                "automatic_thought": _sentence(rng),
                "rational_response": _sentence(rng),
            }
        else:
            body = _sentence(rng, 10)
        submissions.append(
            {
                "entry_id": f"s-{i:03d}",
                "submitted_at": f"{day(rng.randrange(n_days))}T{rng.randrange(24):02d}:00:00Z",
                "homework_type": hw_type,
                "duration_minutes": rng.randint(0, 90),
                "self_rated_quality": rng.randint(1, 5),
                "mood_before": rng.randint(1, 10),
                "mood_after": rng.randint(1, 10),
                "body": body,
            }
        )

    emotion_logs = [
        {
            "entry_id": f"e-{i:03d}",
            "date": day(rng.randrange(n_days)),
            "interval": rng.choice(INTERVALS),
            "descriptor": rng.choice(DESCRIPTORS),
        }
        for i in range(rng.randint(0, 40))
    ]
    activity_logs = [
        {
            "entry_id": f"a-{i:03d}",
            "date": day(rng.randrange(n_days)),
            "block": rng.choice(BLOCKS),
            "description": _sentence(rng, 3),
        }
        for i in range(rng.randint(0, 30))
    ]

    biometric_days = []
    for i, offset in enumerate(sorted(rng.sample(range(n_days), rng.randint(0, min(n_days, 40))))):
        biometric_days.append(
            {
                "entry_id": f"b-{i:03d}",
                "date": day(offset),
                "sleep_hours": round(rng.uniform(3.0, 11.0), 1),
                "resting_heart_rate_bpm": rng.randint(45, 100),
                "activity_steps": rng.randint(0, 20000),
                "mindfulness_minutes": rng.randint(0, 60),
            }
        )

    assessments = []
    for i in range(rng.randint(0, 3)):
        n_items = rng.randint(3, 9)
        scores = [rng.randint(0, 4) for _ in range(n_items)]
        with_thresholds = rng.random() < 0.7
        assessments.append(
            {
                "entry_id": f"as-{i:03d}",
                "administered_at": f"{day(rng.randrange(n_days))}T10:00:00Z",
                "instrument": rng.choice(["GAD7", "PHQ9", "PCL", "OCIR"]),
                "items": [
                    {"text": f"item {j + 1}", "score": s} for j, s in enumerate(scores)
                ],
                "total": sum(scores),
                "thresholds": (
                    {
                        "items": [rng.randint(0, 4) for _ in range(n_items)],
                        "total": rng.randint(1, 4 * n_items),
                    }
                    if with_thresholds
                    else {"items": [], "total": None}
                ),
            }
        )

    goals = [
        {
            "goal_id": f"g-{i:03d}",
            "text": _sentence(rng),
            "created_at": f"{day(rng.randrange(n_days))}T09:00:00Z",
            "status": rng.choice(["active", "achieved", "revised"]),
        }
        for i in range(rng.randint(0, 3))
    ]
    messages = [
        {
            "message_id": f"m-{i:03d}",
            "sent_at": f"{day(rng.randrange(n_days))}T12:00:00Z",
            "direction": rng.choice(["to_client", "from_client"]),
            "text": _sentence(rng),
        }
        for i in range(rng.randint(0, 3))
    ]

    titles = [f"Workbook {c}" for c in "ABCDE"]
    rng.shuffle(titles)
    cut = rng.randint(0, len(titles))
    reading = {"finished": titles[:cut], "not_finished": titles[cut : cut + rng.randint(0, 2)]}

    return {
        "schema_version": 1,
        "record_id": record_id,
        "client_label": f"Client {record_id}",
        "entry_seq": 0,
        "submissions": submissions,
        "emotion_logs": emotion_logs,
        "activity_logs": activity_logs,
        "assessments": assessments,
        "biometric_days": biometric_days,
        "reading_materials": reading,
        "goals": goals,
        "messages": messages,
    }


def random_record(
    rng: random.Random,
    record_id: str,
    n_days: int = 90,
    end_day: date = date(2025, 4, 20),
) -> ClientRecord:
    return validate_and_load(
        json.dumps(random_document(rng, record_id, n_days, end_day))
    )
