// Three-step onboarding wizard: declare needs, review the server's widget
// recommendations, persist the chosen layout. The wizard cannot finish with
// an invalid configuration: client-side checks catch empty "other" labels
// and server-side ConfigErrors surface inline.

import type { Api } from "./api.js";
import type { OnboardingConfig, WidgetInfo } from "./types.js";
import { emptyConfig } from "./types.js";
import { clear, el } from "./dom.js";

const FOCUS_AREAS = [
  "cognitive_restructuring",
  "mindfulness",
  "behavioral_activation",
  "exposure_therapy",
  "journaling_thought_records",
];
const HOMEWORK_TYPES = [
  "thought_record",
  "journaling",
  "gratitude_journal",
  "mood_tracking",
  "relaxation_breathing",
  "behavioral_experiment",
  "activity_scheduling",
  "exposure_task",
  "mindfulness_practice",
];
const ASSESSMENTS = ["GAD7", "PHQ9", "PCL", "OCIR"];
const SUMMARY_LEVELS = ["Basic Overview", "Detailed Analysis", "No AI Summary"];
const PRIORITIES = [
  "reading",
  "homework_trends",
  "mental_health",
  "journaling",
  "biometric",
  "risk",
];
const FREQUENCIES = ["daily", "weekly", "none"];
const CHAT_ABILITIES = ["raw_data_extraction", "detailed_explanations"];
const CLINICAL_INFO = ["biometric_data", "emotion_logs", "activity_logs"];
const SIDE_FUNCTIONS = ["messaging", "therapy_goals"];

function checkboxGroup(
  legend: string,
  name: string,
  options: string[],
  selected: string[],
  onToggle: (value: string, on: boolean) => void,
): HTMLElement {
  const set = el("fieldset", { class: "option-group", "data-group": name });
  set.append(el("legend", { text: legend }));
  for (const option of options) {
    const box = el("input", { type: "checkbox", value: option, name });
    if (selected.includes(option)) box.setAttribute("checked", "true");
    box.addEventListener("change", () => onToggle(option, box.checked));
    set.append(el("label", {}, [box, ` ${option.replaceAll("_", " ")}`]));
  }
  return set;
}

function radioGroup(
  legend: string,
  name: string,
  options: string[],
  selected: string,
  onPick: (value: string) => void,
): HTMLElement {
  const set = el("fieldset", { class: "option-group", "data-group": name });
  set.append(el("legend", { text: legend }));
  for (const option of options) {
    const radio = el("input", { type: "radio", name, value: option });
    if (option === selected) radio.setAttribute("checked", "true");
    radio.addEventListener("change", () => onPick(option));
    set.append(el("label", {}, [radio, ` ${option.replaceAll("_", " ")}`]));
  }
  return set;
}

function toggleList(list: string[], value: string, on: boolean): void {
  const index = list.indexOf(value);
  if (on && index < 0) list.push(value);
  if (!on && index >= 0) list.splice(index, 1);
}

export function onboardingWizard(
  api: Api,
  clientId: string,
  onDone: (chosen: string[]) => void,
): HTMLElement {
  const config: OnboardingConfig = emptyConfig();
  let recommendations: WidgetInfo[] = [];
  let chosen: string[] = [];
  const host = el("div", { class: "wizard", "data-step": "1" });

  const error = el("p", { class: "error wizard-error", hidden: "true" });
  const showError = (message: string) => {
    error.textContent = message;
    error.removeAttribute("hidden");
  };
  const clearError = () => error.setAttribute("hidden", "true");

  const renderStep1 = () => {
    host.setAttribute("data-step", "1");
    clear(host);
    host.append(el("h2", { text: "Step 1 of 3: Define your needs" }));
    host.append(
      checkboxGroup(
        "Therapeutic focus areas",
        "focus_areas",
        FOCUS_AREAS,
        config.focus_areas,
        (v, on) => toggleList(config.focus_areas, v, on),
      ),
    );
    const otherBox = el("input", { type: "checkbox", name: "focus_other" });
    if (config.focus_areas.includes("other")) otherBox.setAttribute("checked", "true");
    const otherLabel = el("input", {
      type: "text",
      name: "focus_other_label",
      placeholder: "specify other focus...",
      value: config.focus_other_labels[0] ?? "",
    });
    otherBox.addEventListener("change", () =>
      toggleList(config.focus_areas, "other", otherBox.checked),
    );
    otherLabel.addEventListener("input", () => {
      config.focus_other_labels = otherLabel.value.trim() ? [otherLabel.value.trim()] : [];
    });
    host.append(
      el("fieldset", { class: "option-group" }, [
        el("legend", { text: "Other focus" }),
        el("label", {}, [otherBox, " other: "]),
        otherLabel,
      ]),
    );
    host.append(
      checkboxGroup(
        "Homework types you assign",
        "homework_types",
        HOMEWORK_TYPES,
        config.homework_types,
        (v, on) => toggleList(config.homework_types, v, on),
      ),
      checkboxGroup(
        "Assessments you use",
        "assessments",
        ASSESSMENTS,
        config.assessments,
        (v, on) => toggleList(config.assessments, v, on),
      ),
    );
    const next = el("button", { class: "primary", "data-action": "next", text: "Next" });
    next.addEventListener("click", () => {
      if (config.focus_areas.includes("other") && config.focus_other_labels.length === 0) {
        showError("Please specify a label for the 'other' focus area.");
        return;
      }
      clearError();
      renderStep2();
    });
    host.append(error, next);
  };

  const renderStep2 = () => {
    host.setAttribute("data-step", "2");
    clear(host);
    host.append(el("h2", { text: "Step 2 of 3: AI assistance and extras" }));
    host.append(
      radioGroup("Summary level", "summary_level", SUMMARY_LEVELS, config.summary_level, (v) => {
        config.summary_level = v;
      }),
      checkboxGroup(
        "Summary priorities (ordered by selection)",
        "summary_priorities",
        PRIORITIES,
        config.summary_priorities,
        (v, on) => toggleList(config.summary_priorities, v, on),
      ),
      radioGroup(
        "Homework detail in summaries",
        "homework_summary",
        FREQUENCIES,
        config.homework_summary,
        (v) => {
          config.homework_summary = v;
        },
      ),
      checkboxGroup(
        "Chat assistant abilities",
        "aiChatAbilities",
        CHAT_ABILITIES,
        config.aiChatAbilities,
        (v, on) => toggleList(config.aiChatAbilities, v, on),
      ),
      checkboxGroup(
        "Clinical information display",
        "clinical_info_display",
        CLINICAL_INFO,
        config.clinical_info_display,
        (v, on) => toggleList(config.clinical_info_display, v, on),
      ),
      checkboxGroup(
        "Side functions",
        "side_functions",
        SIDE_FUNCTIONS,
        config.side_functions,
        (v, on) => toggleList(config.side_functions, v, on),
      ),
    );
    const back = el("button", { "data-action": "back", text: "Back" });
    back.addEventListener("click", renderStep1);
    const next = el("button", { class: "primary", "data-action": "next", text: "See widgets" });
    next.addEventListener("click", async () => {
      try {
        await api.putConfig(config);
        recommendations = await api.recommendWidgets();
        chosen = recommendations.map((w) => w.widget_id);
        clearError();
        renderStep3();
      } catch (err) {
        showError(String(err));
      }
    });
    host.append(error, el("div", { class: "row" }, [back, next]));
  };

  const renderStep3 = () => {
    host.setAttribute("data-step", "3");
    clear(host);
    host.append(el("h2", { text: "Step 3 of 3: Choose your widgets" }));
    host.append(
      el("p", {
        class: "muted",
        text: "Recommended from your answers; untick anything you do not want.",
      }),
    );
    const set = el("fieldset", { class: "option-group", "data-group": "widgets" });
    for (const widget of recommendations) {
      const box = el("input", { type: "checkbox", value: widget.widget_id, checked: "true" });
      box.addEventListener("change", () => {
        chosen = recommendations
          .map((w) => w.widget_id)
          .filter((id) => {
            const input = set.querySelector<HTMLInputElement>(`input[value="${id}"]`);
            return input?.checked;
          });
      });
      set.append(
        el("label", { class: "widget-option", "data-widget-option": widget.widget_id }, [
          box,
          ` ${widget.kind.replaceAll("_", " ")}`,
        ]),
      );
    }
    host.append(set);
    const back = el("button", { "data-action": "back", text: "Back" });
    back.addEventListener("click", renderStep2);
    const finish = el("button", { class: "primary", "data-action": "finish", text: "Finish" });
    finish.addEventListener("click", async () => {
      if (chosen.length === 0) {
        showError("Choose at least one widget.");
        return;
      }
      try {
        const layout = await api.putLayout(clientId, chosen);
        clearError();
        renderDone(layout.widgets.map((w) => w.widget_id));
      } catch (err) {
        showError(String(err));
      }
    });
    host.append(error, el("div", { class: "row" }, [back, finish]));
  };

  const renderDone = (finalIds: string[]) => {
    host.setAttribute("data-step", "done");
    clear(host);
    host.append(el("h2", { text: "Your dashboard" }));
    const list = el("ul", { class: "chosen-widgets" });
    for (const id of finalIds) {
      list.append(el("li", { "data-chosen-widget": id, text: id.replaceAll("_", " ") }));
    }
    host.append(list);
    const open = el("button", { class: "primary", "data-action": "open", text: "Open dashboard" });
    open.addEventListener("click", () => onDone(finalIds));
    host.append(open);
  };

  renderStep1();
  return host;
}
