"""Traceability: anchors from generated claims back to source entries.

Anchor tokens use the fixed grammar ``[[entry:<entry_id>]]`` inline in
generated text. Tokens are injected by the pipeline from the retrieval set,
never trusted from model output, so every anchor resolves at creation time.
Later audits classify each anchor as resolved, stale (entry edited since
anchoring), or dangling (entry or record gone).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DanglingAnchor, UnknownRecord, UnmatchedCitation
from .records.documents import entry_digest
from .records.entities import AnchorableEntry

if TYPE_CHECKING:
    from .records.store import RecordStore

ANCHOR_TOKEN_RE = re.compile(r"\[\[entry:([^\[\]\s]+)\]\]")


def anchor_token(entry_id: str) -> str:
    return f"[[entry:{entry_id}]]"


def strip_anchor_tokens(text: str) -> str:
    stripped = re.sub(r" ?\[\[entry:[^\[\]\s]+\]\]", "", text)
    return "\n".join(line.rstrip() for line in stripped.split("\n"))


@dataclass(frozen=True)
class ProvenanceAnchor:
    record_id: str
    entry_id: str
    kind: str
    excerpt_hash: str


@dataclass(frozen=True)
class AnchoredText:
    body: str
    anchors: tuple[ProvenanceAnchor, ...]


def attach_anchors(
    record_id: str, body: str, sources: list[AnchorableEntry]
) -> AnchoredText:
    """Turn each citation token in ``body`` into a ProvenanceAnchor with a
    fresh excerpt hash. Every cited id must be present in ``sources``."""
    by_id = {entry.entry_id: entry for entry in sources}
    anchors = []
    for match in ANCHOR_TOKEN_RE.finditer(body):
        entry_id = match.group(1)
        entry = by_id.get(entry_id)
        if entry is None:
            raise UnmatchedCitation(entry_id)
        anchors.append(
            ProvenanceAnchor(
                record_id=record_id,
                entry_id=entry_id,
                kind=entry.kind,
                excerpt_hash=entry_digest(entry),
            )
        )
    return AnchoredText(body=body, anchors=tuple(anchors))


@dataclass(frozen=True)
class Resolution:
    entry: AnchorableEntry
    stale: bool


def resolve(store: "RecordStore", anchor: ProvenanceAnchor) -> Resolution:
    """Return the live entry behind an anchor; ``stale`` flags content edited
    after anchoring. Raises DanglingAnchor when the entry or record is gone."""
    try:
        record = store.load(anchor.record_id)
    except UnknownRecord as exc:
        raise DanglingAnchor(f"record {anchor.record_id!r} unknown") from exc
    entry = record.entry_by_id(anchor.entry_id)
    if entry is None:
        raise DanglingAnchor(
            f"entry {anchor.entry_id!r} not found in record {anchor.record_id!r}"
        )
    return Resolution(entry=entry, stale=entry_digest(entry) != anchor.excerpt_hash)


@dataclass(frozen=True)
class AuditReport:
    resolved_count: int
    dangling: tuple[ProvenanceAnchor, ...]
    stale: tuple[ProvenanceAnchor, ...]

    @property
    def total(self) -> int:
        return self.resolved_count + len(self.dangling) + len(self.stale)

    def clean(self) -> bool:
        return not self.dangling and not self.stale


def audit_document(doc: AnchoredText, store: "RecordStore") -> AuditReport:
    """Classify every anchor in a document into exactly one of
    resolved / stale / dangling."""
    resolved = 0
    dangling = []
    stale = []
    for anchor in doc.anchors:
        try:
            resolution = resolve(store, anchor)
        except DanglingAnchor:
            dangling.append(anchor)
            continue
        if resolution.stale:
            stale.append(anchor)
        else:
            resolved += 1
    return AuditReport(resolved_count=resolved, dangling=tuple(dangling), stale=tuple(stale))
