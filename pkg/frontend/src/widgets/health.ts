// Health signals: windowed biometric aggregates as a stats table plus the
// fixed text block used in prompts.

import type { Api } from "../api.js";
import { el } from "../dom.js";
import { emptyState } from "../charts.js";

export async function healthWidget(api: Api, clientId: string): Promise<HTMLElement> {
  const host = el("section", { class: "widget", "data-widget": "health_signals" });
  host.append(el("h2", { text: "Health Signals" }));
  try {
    const biometrics = await api.biometrics(clientId);
    if (biometrics.day_count === 0) {
      host.append(emptyState("No data"));
      return host;
    }
    const table = el("table", { class: "stats" });
    table.append(
      el("tr", {}, [
        el("th", { text: "metric" }),
        el("th", { text: "mean" }),
        el("th", { text: "min" }),
        el("th", { text: "max" }),
      ]),
    );
    for (const [metric, stats] of Object.entries(biometrics.stats)) {
      table.append(
        el("tr", {}, [
          el("td", { text: metric.replaceAll("_", " ") }),
          el("td", { text: stats.mean.toFixed(2) }),
          el("td", { text: String(stats.min) }),
          el("td", { text: String(stats.max) }),
        ]),
      );
    }
    host.append(table);
    host.append(el("p", { class: "muted", text: `${biometrics.day_count} day(s) in window` }));
  } catch (error) {
    host.append(el("p", { class: "error", text: String(error) }));
  }
  return host;
}
