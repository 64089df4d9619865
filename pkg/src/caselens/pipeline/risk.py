"""Risk-signal cue scan shared by the mock provider and the summary engine.

Both sides must agree on when the risk section has material: the engine uses
the scan to pick anchor candidates, and the offline provider uses it to
decide between content and "No data". Cue matching is a documented keyword
heuristic, not a clinical instrument.
"""

from __future__ import annotations

RISK_CUES: tuple[str, ...] = (
    "hopeless",
    "worthless",
    "self-harm",
    "suicid",
    "no point in",
    "give up",
    "can't cope",
    "cannot cope",
    "end it all",
    "panic attack",
)


def has_risk_cue(text: str) -> bool:
    lowered = text.lower()
    return any(cue in lowered for cue in RISK_CUES)


def risk_matching(texts: list[str]) -> list[str]:
    return [t for t in texts if has_risk_cue(t)]
