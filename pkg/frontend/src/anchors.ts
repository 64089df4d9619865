// Anchor chips: every provenance anchor renders as a navigable chip that
// opens the originating entry. Unresolvable anchors show a visible badge
// instead of failing silently.

import type { Api } from "./api.js";
import type { Anchor } from "./types.js";
import { el, entryView, openModal } from "./dom.js";

export const ANCHOR_TOKEN = /\[\[entry:([^\[\]\s]+)\]\]/g;

export function stripTokens(text: string): string {
  return text.replace(/ ?\[\[entry:[^\[\]\s]+\]\]/g, "");
}

export function anchorChip(api: Api, anchor: Anchor): HTMLElement {
  const chip = el("button", {
    class: "anchor-chip",
    "data-entry-id": anchor.entry_id,
    "data-record-id": anchor.record_id,
    text: anchor.entry_id,
    title: `open ${anchor.kind} ${anchor.entry_id}`,
  });
  chip.addEventListener("click", async () => {
    try {
      const resolved = await api.resolveAnchor(
        anchor.record_id,
        anchor.entry_id,
        anchor.excerpt_hash,
      );
      const view = entryView(resolved.entry.kind, resolved.entry.data);
      if (resolved.stale) {
        chip.classList.add("stale");
        const holder = el("div", {});
        holder.append(
          el("p", { class: "badge stale-badge", text: "edited since anchoring" }),
          view,
        );
        openModal(`${resolved.kind} ${anchor.entry_id}`, holder);
      } else {
        openModal(`${resolved.kind} ${anchor.entry_id}`, view);
      }
    } catch (error) {
      chip.classList.add("dangling");
      chip.title = "entry no longer exists";
      chip.append(el("span", { class: "badge dangling-badge", text: " (dangling)" }));
    }
  });
  return chip;
}

/** Render text that may carry inline anchor tokens: text nodes interleaved
 * with chips, chip order following token order. */
export function renderAnchoredText(
  api: Api,
  text: string,
  anchorsById: Map<string, Anchor>,
): HTMLElement {
  const host = el("span", { class: "anchored-text" });
  let last = 0;
  for (const match of text.matchAll(ANCHOR_TOKEN)) {
    const index = match.index ?? 0;
    if (index > last) host.append(text.slice(last, index).replace(/ $/, " "));
    const anchor = anchorsById.get(match[1]);
    if (anchor) host.append(anchorChip(api, anchor));
    last = index + match[0].length;
  }
  if (last < text.length) host.append(text.slice(last));
  return host;
}
