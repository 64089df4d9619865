"""caselens: therapist-facing homework sense-making service.

Centralizes heterogeneous client homework data into a canonical record,
computes glanceable progress analytics, and drives provenance-linked
AI summaries and a query chat assistant.
"""

__version__ = "0.1.0"
