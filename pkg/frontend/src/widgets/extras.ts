// Messaging and therapy-goals widgets, plus the reading list block.

import type { Api } from "../api.js";
import { el } from "../dom.js";

export async function messagingWidget(api: Api, clientId: string): Promise<HTMLElement> {
  const host = el("section", { class: "widget", "data-widget": "messaging" });
  host.append(el("h2", { text: "Messages" }));
  const list = el("ul", { class: "messages" });
  const refresh = async () => {
    const messages = await api.messages(clientId);
    list.replaceChildren(
      ...messages.map((m) =>
        el("li", {
          class: `message ${m.data["direction"]}`,
          text: `${String(m.data["sent_at"]).slice(0, 10)} ${m.data["text"]}`,
        }),
      ),
    );
  };
  const input = el("input", { type: "text", placeholder: "Message to client..." });
  const send = el("button", { text: "Send" });
  send.addEventListener("click", async () => {
    if (!input.value.trim()) return;
    await api.postMessage(clientId, input.value.trim());
    input.value = "";
    await refresh();
  });
  host.append(list, el("div", { class: "row" }, [input, send]));
  try {
    await refresh();
  } catch (error) {
    host.append(el("p", { class: "error", text: String(error) }));
  }
  return host;
}

export async function goalsWidget(api: Api, clientId: string): Promise<HTMLElement> {
  const host = el("section", { class: "widget", "data-widget": "therapy_goals" });
  host.append(el("h2", { text: "Therapy Goals" }));
  const list = el("ul", { class: "goals" });
  const refresh = async () => {
    const goals = await api.goals(clientId);
    list.replaceChildren(
      ...goals.map((g) => {
        const status = String(g.data["status"]);
        const item = el("li", { class: `goal goal-${status}` });
        item.append(el("span", { text: `${g.data["text"]} ` }));
        const select = el("select", {});
        for (const option of ["active", "achieved", "revised"]) {
          const opt = el("option", { value: option, text: option });
          if (option === status) opt.setAttribute("selected", "true");
          select.append(opt);
        }
        select.addEventListener("change", async () => {
          await api.putGoal(clientId, {
            goal_id: String(g.data["goal_id"]),
            status: select.value,
          });
          await refresh();
        });
        item.append(select);
        return item;
      }),
    );
  };
  const input = el("input", { type: "text", placeholder: "New goal..." });
  const add = el("button", { text: "Add" });
  add.addEventListener("click", async () => {
    if (!input.value.trim()) return;
    await api.putGoal(clientId, { text: input.value.trim() });
    input.value = "";
    await refresh();
  });
  host.append(list, el("div", { class: "row" }, [input, add]));
  try {
    await refresh();
  } catch (error) {
    host.append(el("p", { class: "error", text: String(error) }));
  }
  return host;
}

export async function readingBlock(api: Api, clientId: string): Promise<HTMLElement> {
  const host = el("div", { class: "reading" });
  try {
    const reading = await api.reading(clientId);
    host.append(
      el("p", { text: `Finished: ${reading.finished.join("; ") || "none"}` }),
      el("p", { text: `Unfinished: ${reading.not_finished.join("; ") || "none"}` }),
    );
  } catch (error) {
    host.append(el("p", { class: "error", text: String(error) }));
  }
  return host;
}
