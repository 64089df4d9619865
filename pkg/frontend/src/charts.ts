// Hand-rolled SVG charts. Every chart renders a friendly empty state instead
// of crashing on empty data.

import { el } from "./dom.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function emptyState(message: string): HTMLElement {
  return el("div", { class: "chart-empty", text: message });
}

export interface Bar {
  value: number;
  label: string;
  /** 1..5 quality step driving color saturation (single hue). */
  saturationStep: number;
  title: string;
  onClick?: () => void;
}

/** Duration bar chart; saturation encodes self-rated quality in 5 steps. */
export function barChart(bars: Bar[], heightPx = 140): HTMLElement {
  if (bars.length === 0) return emptyState("No data in window");
  const width = Math.max(bars.length * 34, 120);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${heightPx + 20}`,
    width: String(width),
    height: String(heightPx + 20),
    class: "bar-chart",
    role: "img",
  });
  const max = Math.max(...bars.map((b) => b.value), 1);
  bars.forEach((bar, i) => {
    const h = Math.max((bar.value / max) * heightPx, 2);
    const step = Math.min(Math.max(bar.saturationStep, 1), 5);
    const rect = svgEl("rect", {
      x: String(i * 34 + 4),
      y: String(heightPx - h),
      width: "26",
      height: String(h),
      class: `bar sat-${step}`,
      "data-label": bar.label,
      tabindex: "0",
    });
    const tooltip = svgEl("title", {});
    tooltip.textContent = bar.title;
    rect.append(tooltip);
    if (bar.onClick) {
      rect.addEventListener("click", bar.onClick);
      rect.classList.add("clickable");
    }
    svg.append(rect);
    const label = svgEl("text", {
      x: String(i * 34 + 17),
      y: String(heightPx + 14),
      "text-anchor": "middle",
      class: "bar-label",
    });
    label.textContent = bar.label;
    svg.append(label);
  });
  const wrap = el("div", { class: "chart-wrap" });
  wrap.append(svg);
  return wrap;
}

export interface LineSeries {
  name: string;
  values: number[];
  cssClass: string;
}

/** Paired line chart on a fixed axis (mood scales run 1..10). */
export function lineChart(
  series: LineSeries[],
  yMin: number,
  yMax: number,
  heightPx = 120,
): HTMLElement {
  const longest = Math.max(...series.map((s) => s.values.length), 0);
  if (longest === 0) return emptyState("No data in window");
  const width = Math.max(longest * 30, 120);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${heightPx}`,
    width: String(width),
    height: String(heightPx),
    class: "line-chart",
    role: "img",
  });
  const y = (v: number) =>
    heightPx - 8 - ((v - yMin) / (yMax - yMin)) * (heightPx - 16);
  for (const gridValue of [yMin, (yMin + yMax) / 2, yMax]) {
    svg.append(
      svgEl("line", {
        x1: "0",
        x2: String(width),
        y1: String(y(gridValue)),
        y2: String(y(gridValue)),
        class: "grid",
      }),
    );
  }
  for (const s of series) {
    if (s.values.length === 0) continue;
    const points = s.values
      .map((v, i) => `${i * 30 + 15},${y(v).toFixed(1)}`)
      .join(" ");
    svg.append(
      svgEl("polyline", { points, class: `line ${s.cssClass}`, fill: "none" }),
    );
  }
  const legend = el("div", { class: "legend" });
  for (const s of series) {
    legend.append(el("span", { class: `legend-item ${s.cssClass}`, text: s.name }));
  }
  const wrap = el("div", { class: "chart-wrap" });
  wrap.append(svg, legend);
  return wrap;
}
