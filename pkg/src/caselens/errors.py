"""Typed errors shared across the package.

Every error that crosses the HTTP boundary maps to a structured payload
{code, message, path}; ``code`` is the class name, ``path`` is a JSON-ish
pointer into the offending document where one exists.
"""

from __future__ import annotations


class CaselensError(Exception):
    """Base class; carries an optional document path for error payloads."""

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path

    @property
    def code(self) -> str:
        return type(self).__name__


class SchemaError(CaselensError):
    """Document is missing a field, has an ill-typed field, or violates a
    structural invariant. Always names the offending path."""


class RangeError(CaselensError):
    """A numeric field is outside its allowed range (mood 1-10, quality 1-5,
    non-negative quantities). Names the offending path."""


class DuplicateIdError(CaselensError):
    """Two entries in one record share an entry_id."""


class UnknownRecord(CaselensError):
    """No record with the given record_id exists in the store."""


class ValidationError(CaselensError):
    """An entry handed to ingest violates its type invariants."""


class ThresholdMismatch(CaselensError):
    """Assessment threshold list is non-empty but does not cover every item."""


class UnmatchedCitation(CaselensError):
    """Generated text cites an entry that is not in the retrieval set."""

    def __init__(self, entry_id: str):
        super().__init__(f"citation references entry not in sources: {entry_id}")
        self.entry_id = entry_id


class DanglingAnchor(CaselensError):
    """Anchor points at a deleted entry or an unknown record."""


class ConfigError(CaselensError):
    """Onboarding configuration is missing or invalid for the requested operation."""


class UnknownWidget(CaselensError):
    """A chosen widget is not among the recommendations."""


class ProviderUnavailable(CaselensError):
    """The completion provider is not configured or not reachable."""


class ProviderTimeout(CaselensError):
    """The completion provider did not answer within the deadline."""


class QuotaExceeded(CaselensError):
    """The completion provider refused the call for quota reasons."""


class GenerationFailed(CaselensError):
    """Retry budget exhausted; carries the final ViolationList."""

    def __init__(self, message: str, violations, attempts: int):
        super().__init__(message)
        self.violations = violations
        self.attempts = attempts
