"""Output contract constants shared by validators, providers, and engines."""

from __future__ import annotations

SUMMARY_HEADERS: tuple[str, ...] = (
    "Reading Materials",
    "Homework Completion Trends",
    "Mental Health Patterns",
    "Journaling & Thought Records",
    "Biometric Trends from Apple Health",
    "Risk Alerts for Emotional Distress",
    "Overall Summary",
)
OPTIONAL_SUMMARY_HEADER = "Other Observations"

NO_SUMMARY_TEXT = "No AI summary is needed."
INSUFFICIENT_TEXT = "Insufficient data"
SUGGESTION_DISCLAIMER = (
    "[Disclaimer] AI-generated suggestions may be incomplete or contain errors. "
    "Review raw client data before acting."
)
RAW_DATA_TITLE = "Relevant Raw Data"
NO_FOCUS_DATA_TEXT = "No data related to focus areas"
NO_DATA = "No data"
MAX_SUGGESTION_BULLETS = 5
