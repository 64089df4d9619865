// Homework overview: duration bars with quality-driven saturation, paired
// before/after mood lines on the 1..10 scale, hover notes, click-through to
// the original submission.

import type { Api } from "../api.js";
import type { EntryEnvelope } from "../types.js";
import { barChart, lineChart } from "../charts.js";
import { el, entryView, openModal } from "../dom.js";

function noteOf(data: Record<string, unknown>): string {
  const body = data["body"];
  if (typeof body === "string") return body;
  if (body && typeof body === "object") {
    const record = body as Record<string, unknown>;
    return String(record["trigger_situation"] ?? "");
  }
  return "";
}

export async function homeworkWidget(api: Api, clientId: string): Promise<HTMLElement> {
  const host = el("section", {
    class: "widget",
    "data-widget": "homework_overview",
  });
  host.append(el("h2", { text: "Homework Overview" }));

  let submissions: EntryEnvelope[] = [];
  try {
    submissions = await api.entries(clientId, "submission");
  } catch (error) {
    host.append(el("p", { class: "error", text: String(error) }));
    return host;
  }

  const bars = submissions.map((envelope) => {
    const data = envelope.data;
    const submittedAt = String(data["submitted_at"] ?? "");
    const note = noteOf(data);
    return {
      value: Number(data["duration_minutes"] ?? 0),
      label: submittedAt.slice(5, 10),
      saturationStep: Number(data["self_rated_quality"] ?? 1),
      title: `${submittedAt} ${data["homework_type"]}\n${note}`,
      onClick: () =>
        openModal(`${data["homework_type"]} ${data["entry_id"]}`, entryView(envelope.kind, data)),
    };
  });
  const duration = el("div", { class: "subpanel" });
  duration.append(el("h3", { text: "Time spent (minutes), shaded by self-rated quality" }));
  duration.append(barChart(bars));
  host.append(duration);

  const moods = el("div", { class: "subpanel" });
  moods.append(el("h3", { text: "Mood before and after (1-10)" }));
  moods.append(
    lineChart(
      [
        {
          name: "before",
          cssClass: "mood-before",
          values: submissions.map((s) => Number(s.data["mood_before"] ?? 0)),
        },
        {
          name: "after",
          cssClass: "mood-after",
          values: submissions.map((s) => Number(s.data["mood_after"] ?? 0)),
        },
      ],
      1,
      10,
    ),
  );
  host.append(moods);
  return host;
}
