// Assessment tracker: totals at a glance; "Details" expands all items with
// color highlighting on any item that exceeds its threshold.

import type { Api } from "../api.js";
import { el } from "../dom.js";
import { emptyState } from "../charts.js";

export async function assessmentsWidget(api: Api, clientId: string): Promise<HTMLElement> {
  const host = el("section", { class: "widget", "data-widget": "assessment_tracker" });
  host.append(el("h2", { text: "Assessments" }));
  try {
    const results = await api.assessments(clientId);
    if (results.length === 0) {
      host.append(emptyState("No assessments in window"));
      return host;
    }
    for (const result of results) {
      const band = result.total_band === "at_or_above" ? "elevated" : "normal";
      const summary = el("summary", {}, [
        el("strong", { text: result.instrument }),
        ` ${result.administered_at.slice(0, 10)} `,
        el("span", {
          class: `badge band-${band}`,
          text: `total ${result.total}` +
            (result.total_threshold !== null ? ` / cutoff ${result.total_threshold}` : ""),
        }),
        " Details",
      ]);
      const items = el("ul", { class: "assessment-items" });
      for (const item of result.items) {
        const li = el("li", { class: item.exceeded ? "item-elevated" : "item-normal" }, [
          `${item.text}: ${item.score}`,
          item.threshold !== null ? ` (threshold ${item.threshold})` : "",
        ]);
        items.append(li);
      }
      const details = el("details", {}, [summary, items]);
      host.append(details);
    }
  } catch (error) {
    host.append(el("p", { class: "error", text: String(error) }));
  }
  return host;
}
