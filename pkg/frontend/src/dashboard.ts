// Cost dashboard: four metric sliders, the gauge, per-rule DoS bars,
// and the aggregated output set drawn from the served clip heights.

import type { ApiClient } from "./api.js";
import { clear, el, svgEl } from "./dom.js";
import { renderGauge } from "./gauge.js";
import {
  EVALUATE_DEBOUNCE_MS,
  RequestSequencer,
  StalenessTracker,
  WorkbenchState,
  debounce,
} from "./state.js";
import type { ModelVariable } from "./types.js";
import { costPanelModel } from "./viewmodel.js";

export class CostDashboard {
  readonly root: HTMLElement;
  private readonly sequencer = new RequestSequencer();
  private readonly gaugeHost: HTMLElement;
  private readonly barsHost: HTMLElement;
  private readonly curveHost: HTMLElement;
  private readonly noticeHost: HTMLElement;
  private readonly outputTerms: { name: string; points: number[] }[];
  private listeners: (() => void)[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly state: WorkbenchState,
    private readonly staleness: StalenessTracker,
    outputVariable: ModelVariable | undefined,
  ) {
    this.outputTerms = (outputVariable?.terms ?? []).map((t) => ({
      name: t.name,
      points: t.points,
    }));
    this.gaugeHost = el("div", { class: "gauge-host" });
    this.barsHost = el("div", { class: "dos-bars" });
    this.curveHost = el("div", { class: "output-curve" });
    this.noticeHost = el("div", { class: "notices" });
    this.root = el("section", { class: "panel", id: "cost-dashboard" }, [
      el("h2", { text: "Cost of support" }),
      this.noticeHost,
      this.buildSliders(),
      this.gaugeHost,
      this.barsHost,
      this.curveHost,
    ]);
  }

  /** Notify the scenario panel (baseline shares the same sliders). */
  onMetricsChanged(listener: () => void): void {
    this.listeners.push(listener);
  }

  private buildSliders(): HTMLElement {
    const container = el("div", { class: "sliders" });
    const scheduleEvaluate = debounce(() => {
      void this.evaluate();
      for (const listener of this.listeners) listener();
    }, EVALUATE_DEBOUNCE_MS);

    for (const spec of this.state.specs) {
      const slider = el("input", {
        type: "range",
        min: String(spec.lo),
        max: String(spec.hi),
        step: String(spec.step),
        value: String(this.state.metrics.get(spec.name)),
        id: `slider-${spec.name}`,
      });
      const readout = el("output", {
        text: `${this.state.metrics.get(spec.name)} ${spec.unit}`,
      });
      slider.addEventListener("input", () => {
        // the range input itself guarantees in-range values; clamp again
        // so programmatic changes can't escape either
        const value = this.state.setMetric(spec.name, Number(slider.value));
        readout.textContent = `${value} ${spec.unit}`;
      });
      // evaluate on release, not on every drag tick
      slider.addEventListener("change", () => scheduleEvaluate());
      container.append(
        el("label", { for: `slider-${spec.name}`, text: spec.name }),
        slider,
        readout,
      );
    }
    return container;
  }

  async evaluate(): Promise<void> {
    const ticket = this.sequencer.next();
    let response;
    try {
      response = await this.api.evaluate(this.state.metricValues());
    } catch {
      this.showRetryBanner();
      return;
    }
    if (!this.sequencer.isCurrent(ticket)) return; // superseded
    this.clearRetryBanner();
    this.state.modelEtag = response.model_etag;
    this.staleness.recordResult("dashboard", response.model_etag);
    this.render(costPanelModel(response));
  }

  private render(model: ReturnType<typeof costPanelModel>): void {
    renderGauge(this.gaugeHost, "predicted cost", model.gauge);
    clear(this.barsHost);
    if (model.bars.length) {
      this.barsHost.append(el("h3", { text: "fired rules" }));
      for (const bar of model.bars) {
        const row = el("div", { class: "dos-row", "data-rule": String(bar.rule) });
        row.append(el("span", { text: bar.label, class: "dos-label" }));
        const track = el("div", { class: "dos-track" });
        const fill = el("div", { class: "dos-fill" });
        fill.style.width = `${bar.dos * 100}%`;
        track.append(fill);
        row.append(track);
        row.append(el("span", { text: bar.dos.toFixed(2), class: "dos-value" }));
        this.barsHost.append(row);
      }
    }
    this.renderCurve(model.memberships);
    clear(this.noticeHost);
    for (const name of model.clamped) {
      this.noticeHost.append(
        el("p", { class: "warning", text: `${name} was clamped to its range` }),
      );
    }
  }

  private renderCurve(memberships: { term: string; height: number }[]): void {
    clear(this.curveHost);
    if (!memberships.length || !this.outputTerms.length) return;
    this.curveHost.append(el("h3", { text: "aggregated output set" }));
    const heights = new Map(memberships.map((m) => [m.term, m.height]));
    const width = 300;
    const height = 80;
    const points: string[] = [];
    for (let i = 0; i <= width; i++) {
      const x = (i / width) * 100;
      let mu = 0;
      for (const term of this.outputTerms) {
        const h = heights.get(term.name) ?? 0;
        if (h > 0) mu = Math.max(mu, Math.min(h, trapezoidMu(term.points, x)));
      }
      points.push(`${i},${height - mu * (height - 4)}`);
    }
    const svg = svgEl("svg", {
      viewBox: `0 0 ${width} ${height}`,
      class: "curve",
    });
    svg.append(svgEl("polyline", { points: points.join(" "), class: "curve-line" }));
    this.curveHost.append(svg);
  }

  private showRetryBanner(): void {
    if (this.noticeHost.querySelector("[data-role=retry]")) return;
    const banner = el("div", { class: "retry-banner", "data-role": "retry" });
    banner.append(el("span", { text: "service unreachable — " }));
    const retry = el("button", { text: "retry" });
    retry.addEventListener("click", () => void this.evaluate());
    banner.append(retry);
    this.noticeHost.append(banner);
  }

  private clearRetryBanner(): void {
    this.noticeHost.querySelector("[data-role=retry]")?.remove();
  }
}

function trapezoidMu(points: number[], x: number): number {
  const [a, b, c, d] =
    points.length === 3 ? [points[0], points[1], points[1], points[2]] : points;
  if (x < a || x > d) return 0;
  if (x >= b && x <= c) return 1;
  if (x < b) return (x - a) / (b - a);
  return (d - x) / (d - c);
}
