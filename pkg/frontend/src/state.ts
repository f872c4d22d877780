// Workbench state: slider values (always in range), process toggles,
// last results with the etag they were computed under, and per-panel
// request sequencing so superseded responses are dropped.

import type { ModelVariable } from "./types.js";

export interface MetricSpec {
  name: string;
  lo: number;
  hi: number;
  unit: string;
  step: number;
}

export const METRIC_ORDER = [
  "InterruptTime",
  "ResponseTime",
  "ProcessOrientation",
  "AuthorizedChanges",
] as const;

export function metricSpecs(variables: ModelVariable[]): MetricSpec[] {
  const byName = new Map(variables.map((v) => [v.name, v]));
  return METRIC_ORDER.filter((name) => byName.has(name)).map((name) => {
    const variable = byName.get(name)!;
    const [lo, hi] = variable.range;
    return { name, lo, hi, unit: variable.unit, step: (hi - lo) / 288 };
  });
}

export function clampToRange(spec: MetricSpec, value: number): number {
  if (Number.isNaN(value)) return spec.lo;
  return Math.min(Math.max(value, spec.lo), spec.hi);
}

export class WorkbenchState {
  readonly metrics = new Map<string, number>();
  readonly toggledProcesses = new Set<string>();
  readonly selectedConcepts = new Set<string>();
  modelEtag = "";

  constructor(readonly specs: MetricSpec[], readonly processes: string[]) {
    for (const spec of specs) {
      this.metrics.set(spec.name, (spec.lo + spec.hi) / 2);
    }
  }

  setMetric(name: string, value: number): number {
    const spec = this.specs.find((s) => s.name === name);
    if (!spec) throw new Error(`unknown metric ${name}`);
    const clamped = clampToRange(spec, value);
    this.metrics.set(name, clamped);
    return clamped;
  }

  metricValues(): Record<string, number> {
    return Object.fromEntries(this.metrics);
  }

  toggleProcess(name: string): boolean {
    if (!this.processes.includes(name)) throw new Error(`unknown process ${name}`);
    if (this.toggledProcesses.has(name)) {
      this.toggledProcesses.delete(name);
      return false;
    }
    this.toggledProcesses.add(name);
    return true;
  }

  toggleConcept(name: string): boolean {
    if (this.selectedConcepts.has(name)) {
      this.selectedConcepts.delete(name);
      return false;
    }
    this.selectedConcepts.add(name);
    return true;
  }
}

/** Tracks whether a displayed result still matches the live model. */
export class StalenessTracker {
  private resultEtags = new Map<string, string>();
  private liveEtag = "";

  recordResult(panel: string, etag: string): void {
    this.resultEtags.set(panel, etag);
  }

  updateLiveEtag(etag: string): void {
    this.liveEtag = etag;
  }

  isStale(panel: string): boolean {
    const recorded = this.resultEtags.get(panel);
    if (recorded === undefined || this.liveEtag === "") return false;
    return recorded !== this.liveEtag;
  }
}

/** At most one logical in-flight request per panel: each call takes a
 * ticket, and only the latest ticket's response may be applied. */
export class RequestSequencer {
  private latest = 0;

  next(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}

/** Trailing-edge debounce used for slider release bursts. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}

export const EVALUATE_DEBOUNCE_MS = 150;
export const ETAG_POLL_MS = 5000;
