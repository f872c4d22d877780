// Causal-map explorer: the selected map drawn as a directed graph with
// signed edge styling; clicking concepts toggles them on and animates
// the iteration trajectory step by step.

import type { ApiClient } from "./api.js";
import { clear, el, svgEl } from "./dom.js";
import { RequestSequencer, WorkbenchState } from "./state.js";
import type { ModelFcm } from "./types.js";
import { explorerModel } from "./viewmodel.js";

const STEP_MS = 600;

export class FcmExplorer {
  readonly root: HTMLElement;
  private readonly sequencer = new RequestSequencer();
  private readonly svgHost: HTMLElement;
  private readonly badgeHost: HTMLElement;
  private readonly logHost: HTMLElement;
  private nodeShapes = new Map<string, SVGElement>();
  private animation: ReturnType<typeof setInterval> | undefined;

  constructor(
    private readonly api: ApiClient,
    private readonly state: WorkbenchState,
    private readonly fcm: ModelFcm,
    private readonly stepMs: number = STEP_MS,
  ) {
    this.svgHost = el("div", { class: "graph-host" });
    this.badgeHost = el("div", { class: "badge", "data-role": "attractor-badge" });
    this.logHost = el("div", { class: "trajectory-log" });
    this.root = el("section", { class: "panel", id: "fcm-explorer" }, [
      el("h2", { text: `Causal map: ${fcm.name}` }),
      el("p", {
        class: "hint",
        text: "click concepts to switch them on; the map then iterates to its attractor",
      }),
      this.svgHost,
      this.badgeHost,
      this.logHost,
    ]);
    this.draw();
  }

  private positions(): Map<string, { x: number; y: number }> {
    const n = this.fcm.concepts.length;
    const cx = 260;
    const cy = 200;
    const r = 150;
    const out = new Map<string, { x: number; y: number }>();
    this.fcm.concepts.forEach((name, i) => {
      const angle = (2 * Math.PI * i) / n - Math.PI / 2;
      out.set(name, { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
    });
    return out;
  }

  private draw(): void {
    clear(this.svgHost);
    this.nodeShapes.clear();
    const svg = svgEl("svg", { viewBox: "0 0 520 400", class: "graph" });
    const defs = svgEl("defs");
    for (const [id, cls] of [["arrow-pos", "edge-pos"], ["arrow-neg", "edge-neg"]]) {
      const marker = svgEl("marker", {
        id, markerWidth: "8", markerHeight: "8",
        refX: "8", refY: "4", orient: "auto",
      });
      marker.append(svgEl("path", { d: "M0,0 L8,4 L0,8 z", class: `${cls}-head` }));
      defs.append(marker);
    }
    svg.append(defs);

    const pos = this.positions();
    const { concepts, weights } = this.fcm;
    for (let i = 0; i < concepts.length; i++) {
      for (let j = 0; j < concepts.length; j++) {
        const w = weights[i][j];
        if (!w) continue;
        const from = pos.get(concepts[i])!;
        const to = pos.get(concepts[j])!;
        const dx = to.x - from.x;
        const dy = to.y - from.y;
        const len = Math.hypot(dx, dy);
        const trim = 26;
        const x1 = from.x + (dx / len) * trim;
        const y1 = from.y + (dy / len) * trim;
        const x2 = to.x - (dx / len) * trim;
        const y2 = to.y - (dy / len) * trim;
        // bow each edge so opposite-direction pairs stay distinguishable
        const mx = (x1 + x2) / 2 - dy / len * 18;
        const my = (y1 + y2) / 2 + dx / len * 18;
        const cls = w > 0 ? "edge-pos" : "edge-neg";
        const path = svgEl("path", {
          d: `M ${x1} ${y1} Q ${mx} ${my} ${x2} ${y2}`,
          class: cls,
          "stroke-width": String(1 + 2.5 * Math.abs(w)),
          "marker-end": `url(#arrow-${w > 0 ? "pos" : "neg"})`,
        });
        path.append(svgEl("title"));
        (path.firstChild as SVGElement).textContent =
          `${concepts[i]} -> ${concepts[j]}: ${w}`;
        svg.append(path);
      }
    }

    for (const name of concepts) {
      const { x, y } = pos.get(name)!;
      const group = svgEl("g", { class: "node", "data-concept": name });
      const circle = svgEl("circle", { cx: String(x), cy: String(y), r: "24" });
      const label = svgEl("text", { x: String(x), y: String(y + 40), "text-anchor": "middle" });
      label.textContent = name;
      group.append(circle, label);
      group.addEventListener("click", () => void this.toggle(name));
      svg.append(group);
      this.nodeShapes.set(name, group);
    }
    this.svgHost.append(svg);
  }

  private async toggle(name: string): Promise<void> {
    const selected = this.state.toggleConcept(name);
    this.nodeShapes.get(name)?.classList.toggle("selected", selected);
    await this.simulate();
  }

  async simulate(): Promise<void> {
    const on = [...this.state.selectedConcepts];
    this.stopAnimation();
    if (!on.length) {
      this.setLit([]);
      this.badgeHost.textContent = "";
      clear(this.logHost);
      return;
    }
    const ticket = this.sequencer.next();
    let response;
    try {
      response = await this.api.simulate(this.fcm.name, on, "binary");
    } catch {
      this.badgeHost.textContent = "simulation unavailable — service unreachable";
      return;
    }
    if (!this.sequencer.isCurrent(ticket)) return;
    const model = explorerModel(response);
    clear(this.logHost);
    for (const step of model.steps) {
      this.logHost.append(
        el("div", { class: "trajectory-step", text: `step ${step.index}: ${step.vector}` }),
      );
    }
    this.badgeHost.textContent = model.badge;
    this.animate(model.steps, model.lit);
  }

  private animate(steps: { on: string[] }[], finalLit: string[]): void {
    let index = 0;
    this.setLit(steps[0]?.on ?? []);
    this.animation = setInterval(() => {
      index += 1;
      if (index >= steps.length) {
        this.stopAnimation();
        this.setLit(finalLit);
        return;
      }
      this.setLit(steps[index].on);
    }, this.stepMs);
  }

  private stopAnimation(): void {
    if (this.animation !== undefined) {
      clearInterval(this.animation);
      this.animation = undefined;
    }
  }

  /** Exposed for tests: which nodes are currently lit. */
  litConcepts(): string[] {
    return [...this.nodeShapes.entries()]
      .filter(([, shape]) => shape.classList.contains("lit"))
      .map(([name]) => name);
  }

  private setLit(names: string[]): void {
    const lit = new Set(names);
    for (const [name, shape] of this.nodeShapes) {
      shape.classList.toggle("lit", lit.has(name));
    }
  }
}
