// Cost gauge and the explicit no-coverage panel. A result is never a
// blank dial: uncovered inputs render the reason and the term degrees.

import { clear, el, svgEl } from "./dom.js";
import type { GaugeModel, NoCoverageModel } from "./viewmodel.js";

export function renderGauge(
  host: HTMLElement,
  label: string,
  model: GaugeModel | NoCoverageModel,
): void {
  clear(host);
  host.append(el("h3", { text: label }));
  if (model.kind === "no-coverage") {
    const panel = el("div", { class: "no-coverage", "data-role": "no-coverage" });
    panel.append(el("p", { text: model.message, class: "no-coverage-message" }));
    const list = el("ul");
    for (const entry of model.degrees) {
      const terms = entry.terms
        .map((t) => `${t.term} ${t.degree.toFixed(2)}`)
        .join(", ");
      list.append(el("li", { text: `${entry.variable}: ${terms || "all zero"}` }));
    }
    panel.append(list);
    host.append(panel);
    return;
  }

  const svg = svgEl("svg", { viewBox: "0 0 200 120", class: "gauge" });
  svg.append(svgEl("path", {
    d: describeArc(100, 100, 80, 0, 1),
    class: "gauge-track",
  }));
  svg.append(svgEl("path", {
    d: describeArc(100, 100, 80, 0, Math.max(model.fraction, 0.001)),
    class: "gauge-fill",
  }));
  const needle = angleFor(model.fraction);
  svg.append(svgEl("line", {
    x1: "100", y1: "100",
    x2: String(100 + 70 * Math.cos(needle)),
    y2: String(100 + 70 * Math.sin(needle)),
    class: "gauge-needle",
  }));
  host.append(svg);
  host.append(el("div", {
    class: "gauge-value",
    "data-role": "gauge-value",
    "data-exact": model.exact,
    text: model.caption,
  }));
}

function angleFor(fraction: number): number {
  // sweep from 180deg (left) to 360deg (right) across the top
  return Math.PI + Math.PI * Math.min(Math.max(fraction, 0), 1);
}

function describeArc(cx: number, cy: number, r: number, from: number, to: number): string {
  const a0 = angleFor(from);
  const a1 = angleFor(to);
  const x0 = cx + r * Math.cos(a0);
  const y0 = cy + r * Math.sin(a0);
  const x1 = cx + r * Math.cos(a1);
  const y1 = cy + r * Math.sin(a1);
  const large = to - from > 0.5 ? 1 : 0;
  return `M ${x0} ${y0} A ${r} ${r} 0 ${large} 1 ${x1} ${y1}`;
}
