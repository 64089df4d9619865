// Onboarding wizard: the example survey path round-trips through the config
// endpoint, the recommendation step mirrors the server's answer, the final
// screen shows exactly the chosen widgets, and invalid configs cannot finish.

import { beforeEach, describe, expect, it } from "vitest";

import { Api } from "../src/api.js";
import { onboardingWizard } from "../src/onboarding.js";
import type { LayoutWidget, OnboardingConfig, WidgetInfo } from "../src/types.js";
import { fixture, settle, stubFetch, type RecordedCall } from "./support.js";

const recommendations = fixture<WidgetInfo[]>("recommend");

function check(name: string, value: string): void {
  const box = document.querySelector<HTMLInputElement>(
    `input[name="${name}"][value="${value}"]`,
  );
  expect(box, `${name}=${value}`).not.toBeNull();
  box!.click();
}

function makeLayoutFromChosen(body: unknown): { widgets: LayoutWidget[] } {
  const chosen = (body as { chosen: string[] }).chosen;
  const byId = new Map(recommendations.map((w) => [w.widget_id, w]));
  return {
    widgets: chosen.map((id) => ({
      widget_id: id,
      kind: byId.get(id)?.kind ?? id,
      clinician_visible: true,
      session_visible: !id.startsWith("genai"),
    })),
  };
}

function setupStub(): { calls: RecordedCall[]; saved: { layout?: unknown } } {
  const saved: { layout?: unknown } = {};
  const { calls } = stubFetch([
    {
      method: "PUT",
      pattern: /\/therapist\/config$/,
      reply: (_url, body) => ({ version: 1, config: body }),
    },
    { method: "GET", pattern: /\/widgets\/recommend$/, reply: recommendations },
    {
      method: "PUT",
      pattern: /\/clients\/elias\/layout$/,
      reply: (_url, body) => {
        saved.layout = makeLayoutFromChosen(body);
        return saved.layout;
      },
    },
    {
      method: "GET",
      pattern: /\/clients\/elias\/layout$/,
      reply: () => saved.layout ?? { widgets: [] },
    },
  ]);
  return { calls, saved };
}

describe("onboarding wizard", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("walks the example path and round-trips the configuration", async () => {
    const { calls } = setupStub();
    let done: string[] | null = null;
    const wizard = onboardingWizard(new Api(""), "elias", (chosen) => {
      done = chosen;
    });
    document.body.append(wizard);

    // Step 1: focus areas, homework types, assessments.
    expect(wizard.getAttribute("data-step")).toBe("1");
    check("focus_areas", "cognitive_restructuring");
    check("focus_areas", "mindfulness");
    check("homework_types", "thought_record");
    check("homework_types", "mood_tracking");
    check("assessments", "GAD7");
    check("assessments", "PHQ9");
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();

    // Step 2: GenAI preferences and side functions.
    expect(wizard.getAttribute("data-step")).toBe("2");
    check("summary_level", "Detailed Analysis");
    check("summary_priorities", "homework_trends");
    check("aiChatAbilities", "raw_data_extraction");
    check("clinical_info_display", "biometric_data");
    check("side_functions", "messaging");
    check("side_functions", "therapy_goals");
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();
    await settle();

    // Step 3 lists every recommendation from the server.
    expect(wizard.getAttribute("data-step")).toBe("3");
    const options = [...document.querySelectorAll("[data-widget-option]")].map((n) =>
      n.getAttribute("data-widget-option"),
    );
    expect(options).toEqual(recommendations.map((w) => w.widget_id));

    document.querySelector<HTMLButtonElement>('[data-action="finish"]')!.click();
    await settle();

    // Final screen renders exactly the chosen widgets.
    expect(wizard.getAttribute("data-step")).toBe("done");
    const shown = [...document.querySelectorAll("[data-chosen-widget]")].map((n) =>
      n.getAttribute("data-chosen-widget"),
    );
    expect(shown).toEqual(recommendations.map((w) => w.widget_id));

    // The submitted config matches the survey answers (round-trip).
    const configCall = calls.find(
      (c) => c.method === "PUT" && c.url.includes("/therapist/config"),
    );
    const submitted = configCall!.body as OnboardingConfig;
    expect(submitted.focus_areas).toEqual(["cognitive_restructuring", "mindfulness"]);
    expect(submitted.homework_types).toEqual(["thought_record", "mood_tracking"]);
    expect(submitted.assessments).toEqual(["GAD7", "PHQ9"]);
    expect(submitted.summary_level).toBe("Detailed Analysis");
    expect(submitted.summary_priorities).toEqual(["homework_trends"]);
    expect(submitted.aiChatAbilities).toEqual(["raw_data_extraction"]);
    expect(submitted.clinical_info_display).toEqual(["biometric_data"]);
    expect(submitted.side_functions).toEqual(["messaging", "therapy_goals"]);

    document.querySelector<HTMLButtonElement>('[data-action="open"]')!.click();
    expect(done).toEqual(recommendations.map((w) => w.widget_id));
  });

  it("persists the layout so a reload sees the identical widgets", async () => {
    const { saved } = setupStub();
    const api = new Api("");
    const wizard = onboardingWizard(api, "elias", () => {});
    document.body.append(wizard);
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();
    await settle();
    document.querySelector<HTMLButtonElement>('[data-action="finish"]')!.click();
    await settle();
    const reloaded = await api.getLayout("elias");
    expect(reloaded).toEqual(saved.layout);
    expect(reloaded.widgets.length).toBeGreaterThan(0);
  });

  it("cannot leave step 1 with an unlabeled 'other' focus area", async () => {
    setupStub();
    const wizard = onboardingWizard(new Api(""), "elias", () => {});
    document.body.append(wizard);
    document.querySelector<HTMLInputElement>('input[name="focus_other"]')!.click();
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();
    expect(wizard.getAttribute("data-step")).toBe("1");
    const error = document.querySelector(".wizard-error")!;
    expect(error.hasAttribute("hidden")).toBe(false);
    expect(error.textContent).toContain("other");
  });

  it("surfaces server-side config rejection inline", async () => {
    stubFetch([
      {
        method: "PUT",
        pattern: /\/therapist\/config$/,
        reply: { code: "ConfigError", message: "bad configuration" },
        status: 400,
      },
    ]);
    const wizard = onboardingWizard(new Api(""), "elias", () => {});
    document.body.append(wizard);
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();
    expect(wizard.getAttribute("data-step")).toBe("2");
    document.querySelector<HTMLButtonElement>('[data-action="next"]')!.click();
    await settle();
    expect(wizard.getAttribute("data-step")).toBe("2");
    expect(document.querySelector(".wizard-error")!.textContent).toContain(
      "bad configuration",
    );
  });
});
