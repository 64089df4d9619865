"""Inference parameters: fixed for all production completions.

Temperature stays at 0.7 and requests go out zero-shot (no few-shot
exemplars); only the output budget differs between the summary and chat
paths.
"""

from __future__ import annotations

from dataclasses import dataclass

PRODUCTION_TEMPERATURE = 0.7


@dataclass(frozen=True)
class InferenceParams:
    temperature: float = PRODUCTION_TEMPERATURE
    max_output_tokens: int = 1500
    zero_shot: bool = True


SUMMARY_PARAMS = InferenceParams(max_output_tokens=1500)
CHAT_PARAMS = InferenceParams(max_output_tokens=800)
