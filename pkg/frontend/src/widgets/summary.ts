// GenAI summary panel: sectioned report with bolded salient values and one
// navigable anchor chip per backing entry. Stale or dangling anchors are
// visibly flagged, never silently dead.

import type { Api } from "../api.js";
import type { SummaryResponse } from "../types.js";
import { anchorChip } from "../anchors.js";
import { el, emphasize } from "../dom.js";

export function renderSummary(api: Api, summary: SummaryResponse): HTMLElement {
  const host = el("div", { class: "summary-body" });
  if (summary.sections.length === 0) {
    host.append(el("p", { text: summary.text }));
    for (const anchor of summary.anchors) host.append(anchorChip(api, anchor));
    return host;
  }
  for (const section of summary.sections) {
    const block = el("section", { class: "summary-section" });
    block.append(el("h3", { text: section.header }));
    const body = el("p", {});
    body.append(emphasize(section.body));
    for (const anchor of section.anchors) {
      body.append(" ", anchorChip(api, anchor));
    }
    block.append(body);
    host.append(block);
  }
  host.append(
    el("p", {
      class: "muted",
      text: `generated ${summary.generated_at} in ${summary.attempts} attempt(s)`,
    }),
  );
  return host;
}

export function summaryWidget(api: Api, clientId: string): HTMLElement {
  const host = el("section", { class: "widget", "data-widget": "genai_summary" });
  host.append(el("h2", { text: "AI Summary" }));
  const button = el("button", { class: "primary", text: "Generate summary" });
  const output = el("div", { class: "summary-output" });
  button.addEventListener("click", async () => {
    button.setAttribute("disabled", "true");
    output.replaceChildren(el("p", { class: "muted", text: "generating..." }));
    try {
      const summary = await api.generateSummary(clientId);
      output.replaceChildren(renderSummary(api, summary));
    } catch (error) {
      output.replaceChildren(el("p", { class: "error", text: String(error) }));
    } finally {
      button.removeAttribute("disabled");
    }
  });
  host.append(button, output);
  return host;
}
