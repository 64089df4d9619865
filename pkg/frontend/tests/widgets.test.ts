// Charts and panels: empty data renders friendly states without crashing,
// quality maps to discrete saturation steps, and the chat panel presents the
// relevant raw data above the AI explanation.

import { beforeEach, describe, expect, it } from "vitest";

import { Api } from "../src/api.js";
import { barChart, lineChart } from "../src/charts.js";
import { renderAnswer } from "../src/widgets/chat.js";
import { homeworkWidget } from "../src/widgets/homework.js";
import type { ChatResponse } from "../src/types.js";
import { fixture, settle, stubFetch } from "./support.js";

const chat = fixture<ChatResponse>("chat");

describe("charts", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("bar chart renders an empty state for no data", () => {
    const node = barChart([]);
    expect(node.classList.contains("chart-empty")).toBe(true);
    expect(node.textContent).toContain("No data");
  });

  it("line chart renders an empty state for no series", () => {
    const node = lineChart([], 1, 10);
    expect(node.classList.contains("chart-empty")).toBe(true);
  });

  it("bars carry one of five saturation steps from quality", () => {
    const node = barChart(
      [1, 2, 3, 4, 5].map((q) => ({
        value: q * 10,
        label: `q${q}`,
        saturationStep: q,
        title: `quality ${q}`,
      })),
    );
    document.body.append(node);
    for (const q of [1, 2, 3, 4, 5]) {
      expect(document.querySelector(`.bar.sat-${q}`)).not.toBeNull();
    }
  });

  it("homework widget shows empty states for a client with no submissions", async () => {
    stubFetch([
      { method: "GET", pattern: /entries\?kinds=submission/, reply: [] },
    ]);
    const widget = await homeworkWidget(new Api(""), "empty");
    document.body.append(widget);
    await settle();
    expect(document.querySelectorAll(".chart-empty").length).toBeGreaterThanOrEqual(2);
  });

  it("homework bars open the original submission on click", async () => {
    stubFetch([
      {
        method: "GET",
        pattern: /entries\?kinds=submission/,
        reply: fixture("entries_tr"),
      },
    ]);
    const widget = await homeworkWidget(new Api(""), "elias");
    document.body.append(widget);
    const bar = document.querySelector<SVGRectElement>(".bar.clickable")!;
    expect(bar).not.toBeNull();
    bar.dispatchEvent(new Event("click"));
    await settle();
    expect(document.querySelector(".modal")).not.toBeNull();
    expect(document.querySelector(".modal")!.textContent).toContain("thought_record");
  });
});

describe("chat panel", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
    stubFetch([]);
  });

  it("renders relevant raw data above the explanation", () => {
    const node = renderAnswer(new Api(""), chat);
    document.body.append(node);
    const block = document.querySelector(".raw-data-block");
    const explanation = document.querySelector(".explanation");
    expect(block).not.toBeNull();
    expect(explanation).not.toBeNull();
    const position = block!.compareDocumentPosition(explanation!);
    expect(position & Node.DOCUMENT_POSITION_FOLLOWING).toBeTruthy();
    expect(block!.querySelector("h4")!.textContent).toBe("Relevant Raw Data");
  });

  it("exposes the routing explanation expandably", () => {
    const node = renderAnswer(new Api(""), chat);
    document.body.append(node);
    const routing = document.querySelector("details.routing")!;
    expect(routing.querySelector("summary")!.textContent).toContain(
      "What information did this answer use?",
    );
    expect(routing.textContent).toContain(`category: ${chat.routing.category}`);
  });

  it("renders the insufficiency answer verbatim", () => {
    const node = renderAnswer(new Api(""), {
      ...chat,
      insufficient: true,
      text: "Insufficient data",
      raw_data_block: null,
      bullets: [],
      anchors: [],
      body_with_anchors: "Insufficient data",
    });
    document.body.append(node);
    expect(document.querySelector(".insufficient")!.textContent).toBe(
      "Insufficient data",
    );
    expect(document.querySelector(".raw-data-block")).toBeNull();
  });
});
