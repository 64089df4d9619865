// GenAI chat panel: free-text questions answered with the relevant raw data
// block above the explanation, anchor chips on every evidence-bearing
// bullet, and an expandable routing explanation.

import type { Api } from "../api.js";
import type { Anchor, ChatResponse } from "../types.js";
import { renderAnchoredText } from "../anchors.js";
import { el } from "../dom.js";

export function renderAnswer(api: Api, answer: ChatResponse): HTMLElement {
  const host = el("div", { class: "chat-answer" });
  if (answer.insufficient) {
    host.append(el("p", { class: "insufficient", text: answer.text }));
    return host;
  }
  if (answer.raw_data_block && answer.raw_data_block.length > 0) {
    const block = el("div", { class: "raw-data-block" });
    block.append(el("h4", { text: "Relevant Raw Data" }));
    const list = el("ul", {});
    for (const line of answer.raw_data_block) {
      list.append(el("li", { text: line }));
    }
    block.append(list);
    host.append(block);
  }
  const anchorsById = new Map<string, Anchor>(
    answer.anchors.map((anchor) => [anchor.entry_id, anchor]),
  );
  const explanation = el("div", { class: "explanation" });
  explanation.append(el("h4", { text: "AI-generated explanation" }));
  for (const line of answer.body_with_anchors.split("\n")) {
    const trimmed = line.trim();
    if (!trimmed.startsWith("- ")) continue;
    const item = el("div", { class: "bullet" });
    item.append(renderAnchoredText(api, trimmed.slice(2), anchorsById));
    explanation.append(item);
  }
  host.append(explanation);

  const routing = el("details", { class: "routing" });
  routing.append(el("summary", { text: "What information did this answer use?" }));
  routing.append(
    el("p", {
      text: `category: ${answer.routing.category}, scope: ${answer.routing.scope}`,
    }),
  );
  const rules = el("ul", {});
  for (const rule of answer.routing.matched_rules) {
    rules.append(
      el("li", { text: `${rule.dimension} -> ${rule.value} (keyword: "${rule.keyword}")` }),
    );
  }
  if (answer.routing.matched_rules.length === 0) {
    rules.append(el("li", { text: "no rules fired; fallback routing applied" }));
  }
  routing.append(rules);
  host.append(routing);
  return host;
}

export function chatWidget(api: Api, clientId: string): HTMLElement {
  const host = el("section", { class: "widget", "data-widget": "genai_chat" });
  host.append(el("h2", { text: "AI Chat Assistant" }));
  const input = el("input", {
    type: "text",
    placeholder: "Ask about this client's data...",
    class: "chat-input",
  });
  const ask = el("button", { class: "primary", text: "Ask" });
  const output = el("div", { class: "chat-output" });
  const submit = async () => {
    const question = input.value.trim();
    if (!question) return;
    ask.setAttribute("disabled", "true");
    output.replaceChildren(el("p", { class: "muted", text: "thinking..." }));
    try {
      const answer = await api.chat(clientId, question);
      output.replaceChildren(renderAnswer(api, answer));
    } catch (error) {
      output.replaceChildren(el("p", { class: "error", text: String(error) }));
    } finally {
      ask.removeAttribute("disabled");
    }
  };
  ask.addEventListener("click", submit);
  input.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") void submit();
  });
  host.append(el("div", { class: "chat-controls" }, [input, ask]), output);
  return host;
}
