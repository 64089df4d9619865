// Tiny DOM helpers; the app composes plain elements, no framework.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "text") node.textContent = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

/** Bold numbers, dates, and week keys so salient points stand out. */
export function emphasize(text: string): HTMLElement {
  const span = el("span");
  const pattern = /(\d{4}-W\d{2}|\d{4}-\d{2}-\d{2}|[+-]?\d+(?:\.\d+)?)/g;
  let last = 0;
  for (const match of text.matchAll(pattern)) {
    const index = match.index ?? 0;
    if (index > last) span.append(text.slice(last, index));
    span.append(el("strong", { text: match[0] }));
    last = index + match[0].length;
  }
  if (last < text.length) span.append(text.slice(last));
  return span;
}

/** Modal host for opening original entries from summaries and charts. */
export function openModal(title: string, content: Node): HTMLElement {
  document.querySelector(".modal-backdrop")?.remove();
  const backdrop = el("div", { class: "modal-backdrop" });
  const box = el("div", { class: "modal", role: "dialog", "aria-label": title });
  const close = el("button", { class: "modal-close", text: "Close" });
  close.addEventListener("click", () => backdrop.remove());
  box.append(el("h3", { text: title }), content, close);
  backdrop.append(box);
  document.body.append(backdrop);
  return backdrop;
}

export function entryView(kind: string, data: Record<string, unknown>): HTMLElement {
  const list = el("dl", { class: "entry-view", "data-kind": kind });
  for (const [key, value] of Object.entries(data)) {
    list.append(el("dt", { text: key }));
    const rendered =
      typeof value === "object" && value !== null
        ? JSON.stringify(value, null, 1)
        : String(value);
    list.append(el("dd", { text: rendered }));
  }
  return list;
}
