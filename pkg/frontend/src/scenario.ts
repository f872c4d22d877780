// Scenario panel: process toggles, side-by-side as-is/to-be gauges, the
// applied-effects table, and the subset sweep ranking.

import type { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { renderGauge } from "./gauge.js";
import { RequestSequencer, StalenessTracker, WorkbenchState } from "./state.js";
import { scenarioPanelModel, sweepRowsModel } from "./viewmodel.js";

export class ScenarioPanel {
  readonly root: HTMLElement;
  private readonly sequencer = new RequestSequencer();
  private readonly sweepSequencer = new RequestSequencer();
  private readonly asIsHost: HTMLElement;
  private readonly toBeHost: HTMLElement;
  private readonly deltaHost: HTMLElement;
  private readonly effectsHost: HTMLElement;
  private readonly sweepHost: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    private readonly state: WorkbenchState,
    private readonly staleness: StalenessTracker,
  ) {
    this.asIsHost = el("div", { class: "gauge-host", id: "as-is-gauge" });
    this.toBeHost = el("div", { class: "gauge-host", id: "to-be-gauge" });
    this.deltaHost = el("div", { class: "delta", "data-role": "cost-delta" });
    this.effectsHost = el("div", { class: "effects" });
    this.sweepHost = el("div", { class: "sweep" });

    const sweepButton = el("button", { text: "rank all process subsets" });
    sweepButton.addEventListener("click", () => void this.runSweep());

    this.root = el("section", { class: "panel", id: "scenario-panel" }, [
      el("h2", { text: "What if we implement..." }),
      this.buildToggles(),
      el("div", { class: "gauge-pair" }, [this.asIsHost, this.toBeHost]),
      this.deltaHost,
      this.effectsHost,
      sweepButton,
      this.sweepHost,
    ]);
  }

  private buildToggles(): HTMLElement {
    const container = el("div", { class: "process-toggles" });
    for (const process of this.state.processes) {
      const checkbox = el("input", { type: "checkbox", id: `toggle-${process}` });
      checkbox.addEventListener("change", () => {
        this.state.toggleProcess(process);
        void this.refresh();
      });
      container.append(
        el("label", { for: `toggle-${process}` }, [checkbox, ` ${process}`]),
      );
    }
    return container;
  }

  async refresh(): Promise<void> {
    const ticket = this.sequencer.next();
    let response;
    try {
      response = await this.api.compare(
        this.state.metricValues(),
        [...this.state.toggledProcesses],
      );
    } catch {
      this.deltaHost.textContent = "service unreachable — adjust and retry";
      return;
    }
    if (!this.sequencer.isCurrent(ticket)) return;
    this.staleness.recordResult("scenario", response.model_etag);
    const model = scenarioPanelModel(response);
    renderGauge(this.asIsHost, "as-is", model.asIs);
    renderGauge(this.toBeHost, "to-be", model.toBe);
    this.deltaHost.textContent = `cost delta: ${model.delta}`;
    clear(this.effectsHost);
    if (model.effects.length) {
      const table = el("table", { class: "effects-table" });
      table.append(el("tr", {}, [
        el("th", { text: "process" }),
        el("th", { text: "metric" }),
        el("th", { text: "delta" }),
      ]));
      for (const effect of model.effects) {
        table.append(el("tr", {}, [
          el("td", { text: effect.process }),
          el("td", { text: effect.metric }),
          el("td", { text: effect.delta }),
        ]));
      }
      this.effectsHost.append(el("h3", { text: "applied effects" }), table);
    }
  }

  async runSweep(): Promise<void> {
    const ticket = this.sweepSequencer.next();
    let response;
    try {
      response = await this.api.sweep(this.state.metricValues());
    } catch {
      this.sweepHost.textContent = "sweep failed — service unreachable";
      return;
    }
    if (!this.sweepSequencer.isCurrent(ticket)) return;
    const rows = sweepRowsModel(response.rows);
    clear(this.sweepHost);
    const table = el("table", { class: "sweep-table" });
    table.append(el("tr", {}, [
      el("th", { text: "cost delta" }),
      el("th", { text: "process subset" }),
    ]));
    for (const row of rows) {
      table.append(el("tr", { class: row.covered ? "" : "uncovered" }, [
        el("td", { text: row.delta }),
        el("td", { text: row.subset }),
      ]));
    }
    this.sweepHost.append(
      el("h3", { text: `all ${rows.length} subsets, best first` }),
      table,
    );
  }
}
