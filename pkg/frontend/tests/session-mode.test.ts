// Display modes: session view must exclude AI panel content from the DOM
// entirely (not hide it with styling); clinician view shows the full layout.

import { beforeEach, describe, expect, it } from "vitest";

import { Api } from "../src/api.js";
import { renderApp } from "../src/app.js";
import type { DisplayModeResponse } from "../src/types.js";
import { fixture, settle, stubFetch } from "./support.js";

const sessionMode = fixture<DisplayModeResponse>("display_session");
const clinicianMode = fixture<DisplayModeResponse>("display_clinician");

function setupStub() {
  return stubFetch([
    { method: "GET", pattern: /\/clients$/, reply: fixture("clients") },
    {
      method: "PUT",
      pattern: /\/clients\/elias\/display-mode$/,
      reply: (_url, body) =>
        (body as { mode: string }).mode === "session" ? sessionMode : clinicianMode,
    },
    { method: "GET", pattern: /\/entries\?kinds=submission/, reply: fixture("entries_tr") },
    { method: "GET", pattern: /\/analytics\/reading$/, reply: fixture("reading") },
    { method: "GET", pattern: /\/analytics\/biometrics$/, reply: fixture("biometrics") },
    { method: "GET", pattern: /\/analytics\/assessments$/, reply: fixture("assessments") },
    { method: "GET", pattern: /\/messages$/, reply: fixture("messages") },
    { method: "GET", pattern: /\/goals$/, reply: fixture("goals") },
  ]);
}

async function renderWithClient(): Promise<void> {
  const root = document.createElement("div");
  document.body.append(root);
  await renderApp(root, new Api(""));
  const picker = document.querySelector<HTMLSelectElement>(".client-picker")!;
  picker.value = "elias";
  picker.dispatchEvent(new Event("change"));
  await settle();
  await settle();
}

describe("display modes", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
    setupStub();
  });

  it("clinician mode renders the full layout including AI panels", async () => {
    await renderWithClient();
    expect(document.querySelector('[data-widget="genai_summary"]')).not.toBeNull();
    expect(document.querySelector('[data-widget="genai_chat"]')).not.toBeNull();
    expect(document.querySelector('[data-widget="homework_overview"]')).not.toBeNull();
  });

  it("session mode excludes AI panel content from the DOM", async () => {
    await renderWithClient();
    document.querySelector<HTMLButtonElement>(".mode-toggle")!.click();
    await settle();
    await settle();
    expect(document.querySelector(".widget-grid")!.getAttribute("data-mode")).toBe(
      "session",
    );
    // Not merely hidden: the nodes and their text are absent entirely.
    expect(document.querySelector('[data-widget="genai_summary"]')).toBeNull();
    expect(document.querySelector('[data-widget="genai_chat"]')).toBeNull();
    const html = document.body.innerHTML;
    expect(html).not.toContain("AI Summary");
    expect(html).not.toContain("AI Chat Assistant");
    expect(html).not.toContain("Generate summary");
    // Non-AI widgets stay.
    expect(document.querySelector('[data-widget="homework_overview"]')).not.toBeNull();
    expect(document.querySelector('[data-widget="messaging"]')).not.toBeNull();
  });

  it("toggling back to clinician restores the AI panels", async () => {
    await renderWithClient();
    const toggle = document.querySelector<HTMLButtonElement>(".mode-toggle")!;
    toggle.click();
    await settle();
    await settle();
    expect(document.querySelector('[data-widget="genai_summary"]')).toBeNull();
    toggle.click();
    await settle();
    await settle();
    expect(document.querySelector('[data-widget="genai_summary"]')).not.toBeNull();
  });
});
