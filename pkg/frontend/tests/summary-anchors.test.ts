// Provenance click-through: anchor chips open the originating entry, stale
// anchors get a visible badge, dangling anchors never fail silently.

import { beforeEach, describe, expect, it } from "vitest";

import { Api } from "../src/api.js";
import { renderSummary } from "../src/widgets/summary.js";
import type { ResolveResponse, SummaryResponse } from "../src/types.js";
import { fixture, settle, stubFetch } from "./support.js";

const summary = fixture<SummaryResponse>("summary");
const resolved = fixture<ResolveResponse>("anchor_tr001");

describe("summary panel provenance", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders the seven section headers in order", () => {
    stubFetch([]);
    const panel = renderSummary(new Api(""), summary);
    document.body.append(panel);
    const headers = [...document.querySelectorAll(".summary-section h3")].map(
      (h) => h.textContent,
    );
    expect(headers).toEqual([
      "Reading Materials",
      "Homework Completion Trends",
      "Mental Health Patterns",
      "Journaling & Thought Records",
      "Biometric Trends from Apple Health",
      "Risk Alerts for Emotional Distress",
      "Overall Summary",
    ]);
  });

  it("clicking an anchor chip opens the originating entry", async () => {
    stubFetch([
      { method: "GET", pattern: /\/anchors\/elias\/tr-001/, reply: resolved },
    ]);
    const panel = renderSummary(new Api(""), summary);
    document.body.append(panel);
    const chip = document.querySelector<HTMLButtonElement>(
      '.anchor-chip[data-entry-id="tr-001"]',
    );
    expect(chip).not.toBeNull();
    chip!.click();
    await settle();
    const modal = document.querySelector(".modal");
    expect(modal).not.toBeNull();
    expect(modal!.textContent).toContain("My paper got rejected.");
  });

  it("flags stale anchors with a visible badge", async () => {
    stubFetch([
      {
        method: "GET",
        pattern: /\/anchors\/elias\/tr-001/,
        reply: { ...resolved, stale: true },
      },
    ]);
    const panel = renderSummary(new Api(""), summary);
    document.body.append(panel);
    const chip = document.querySelector<HTMLButtonElement>(
      '.anchor-chip[data-entry-id="tr-001"]',
    )!;
    chip.click();
    await settle();
    expect(chip.classList.contains("stale")).toBe(true);
    expect(document.querySelector(".stale-badge")?.textContent).toContain(
      "edited since anchoring",
    );
  });

  it("marks dangling anchors instead of failing silently", async () => {
    stubFetch([
      {
        method: "GET",
        pattern: /\/anchors\/elias\/tr-001/,
        reply: { code: "DanglingAnchor", message: "entry gone" },
        status: 404,
      },
    ]);
    const panel = renderSummary(new Api(""), summary);
    document.body.append(panel);
    const chip = document.querySelector<HTMLButtonElement>(
      '.anchor-chip[data-entry-id="tr-001"]',
    )!;
    chip.click();
    await settle();
    expect(chip.classList.contains("dangling")).toBe(true);
    expect(chip.textContent).toContain("dangling");
  });

  it("every section with content carries at least one chip", () => {
    stubFetch([]);
    const panel = renderSummary(new Api(""), summary);
    document.body.append(panel);
    for (const section of document.querySelectorAll(".summary-section")) {
      const body = section.querySelector("p")!.textContent ?? "";
      if (!body.startsWith("No data")) {
        expect(section.querySelectorAll(".anchor-chip").length).toBeGreaterThan(0);
      }
    }
  });
});
