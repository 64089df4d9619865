// Dashboard shell: client picker, clinician/session display-mode toggle, and
// the widget grid. In session mode the AI panels are not merely hidden with
// styling: hidden widgets are never built, so their content is absent from
// the DOM entirely.

import { Api } from "./api.js";
import type { LayoutWidget } from "./types.js";
import { clear, el } from "./dom.js";
import { onboardingWizard } from "./onboarding.js";
import { assessmentsWidget } from "./widgets/assessments.js";
import { chatWidget } from "./widgets/chat.js";
import { goalsWidget, messagingWidget, readingBlock } from "./widgets/extras.js";
import { healthWidget } from "./widgets/health.js";
import { homeworkWidget } from "./widgets/homework.js";
import { summaryWidget } from "./widgets/summary.js";

export interface AppState {
  clientId: string | null;
  mode: "clinician" | "session";
  overrides: Record<string, boolean>;
}

async function buildWidget(
  api: Api,
  clientId: string,
  widget: LayoutWidget,
): Promise<HTMLElement | null> {
  switch (widget.kind) {
    case "homework_overview": {
      const panel = await homeworkWidget(api, clientId);
      panel.append(el("h3", { text: "Reading materials" }), await readingBlock(api, clientId));
      return panel;
    }
    case "health_signals":
      return healthWidget(api, clientId);
    case "assessment_tracker":
      return assessmentsWidget(api, clientId);
    case "genai_summary":
      return summaryWidget(api, clientId);
    case "genai_chat":
      return chatWidget(api, clientId);
    case "messaging":
      return messagingWidget(api, clientId);
    case "therapy_goals":
      return goalsWidget(api, clientId);
    default:
      return null;
  }
}

export async function renderDashboard(
  api: Api,
  root: HTMLElement,
  state: AppState,
): Promise<void> {
  clear(root);
  if (!state.clientId) {
    root.append(el("p", { class: "muted", text: "Pick a client to begin." }));
    return;
  }
  const response = await api.putDisplayMode(state.clientId, state.mode, state.overrides);
  const grid = el("div", { class: "widget-grid", "data-mode": state.mode });
  for (const widget of response.visible) {
    const panel = await buildWidget(api, state.clientId, widget);
    if (panel) grid.append(panel);
  }
  if (response.visible.length === 0) {
    grid.append(el("p", { class: "muted", text: "No widgets visible in this mode." }));
  }
  root.append(grid);
}

export async function renderApp(root: HTMLElement, api: Api): Promise<AppState> {
  const state: AppState = { clientId: null, mode: "clinician", overrides: {} };
  clear(root);

  const header = el("header", { class: "topbar" });
  header.append(el("h1", { text: "caselens" }));

  const picker = el("select", { class: "client-picker", "aria-label": "client" });
  picker.append(el("option", { value: "", text: "choose client..." }));
  const main = el("main", { class: "dashboard" });

  try {
    const clients = await api.listClients();
    for (const client of clients) {
      picker.append(el("option", { value: client.record_id, text: client.client_label }));
    }
  } catch (error) {
    main.append(el("p", { class: "error", text: String(error) }));
  }

  const modeToggle = el("button", {
    class: "mode-toggle",
    "data-mode": state.mode,
    text: "Switch to session view",
  });
  modeToggle.addEventListener("click", async () => {
    state.mode = state.mode === "clinician" ? "session" : "clinician";
    modeToggle.setAttribute("data-mode", state.mode);
    modeToggle.textContent =
      state.mode === "clinician" ? "Switch to session view" : "Switch to clinician view";
    await renderDashboard(api, main, state);
  });

  const onboardingButton = el("button", { class: "onboarding-open", text: "Onboarding" });
  onboardingButton.addEventListener("click", () => {
    if (!state.clientId) return;
    clear(main);
    main.append(
      onboardingWizard(api, state.clientId, () => {
        void renderDashboard(api, main, state);
      }),
    );
  });

  picker.addEventListener("change", async () => {
    state.clientId = picker.value || null;
    await renderDashboard(api, main, state);
  });

  header.append(picker, modeToggle, onboardingButton);
  root.append(header, main);
  await renderDashboard(api, main, state);
  return state;
}
