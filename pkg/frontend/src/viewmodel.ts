// Pure view-models: service payloads in, display data out. Numbers that
// reach the screen pass through unchanged (formatNumber keeps the full
// JSON value), which is what makes UI/service parity testable.

import type {
  AttractorResponse,
  CompareResponse,
  EvaluateResponse,
  Fuzzified,
  SideResult,
  SweepRow,
} from "./types.js";

/** Render a service number exactly as JSON would (no rounding). */
export function formatNumber(value: number): string {
  return String(value);
}

export function formatPercent(value: number): string {
  // gauge captions round for readability; the verbatim value is kept
  // alongside in GaugeModel.exact
  return `${value.toFixed(2)}%`;
}

export interface GaugeModel {
  kind: "value";
  exact: string;       // verbatim service value
  caption: string;     // rounded presentation
  fraction: number;    // 0..1 needle position
}

export interface NoCoverageModel {
  kind: "no-coverage";
  message: string;
  degrees: { variable: string; terms: { term: string; degree: number }[] }[];
}

export type CostPanelModel = {
  gauge: GaugeModel | NoCoverageModel;
  bars: { rule: number; label: string; dos: number }[];
  memberships: { term: string; height: number }[];
  clamped: string[];
};

function noCoverage(fuzzified: Fuzzified): NoCoverageModel {
  return {
    kind: "no-coverage",
    message: "no rule covers these inputs",
    degrees: Object.entries(fuzzified).map(([variable, terms]) => ({
      variable,
      terms: Object.entries(terms)
        .filter(([, degree]) => degree > 0)
        .map(([term, degree]) => ({ term, degree })),
    })),
  };
}

export function costPanelModel(response: EvaluateResponse): CostPanelModel {
  if (response.status === "no_rule_fired") {
    return {
      gauge: noCoverage(response.fuzzified),
      bars: [],
      memberships: [],
      clamped: [],
    };
  }
  const prediction = response.prediction;
  return {
    gauge: {
      kind: "value",
      exact: formatNumber(prediction.crisp),
      caption: formatPercent(prediction.crisp),
      fraction: prediction.crisp / 100,
    },
    bars: prediction.fired_rules.map(({ rule, dos }) => ({
      rule,
      label: `rule ${rule + 1}`,
      dos,
    })),
    memberships: Object.entries(prediction.output_memberships)
      .filter(([, height]) => height > 0)
      .map(([term, height]) => ({ term, height })),
    clamped: prediction.clamped_inputs,
  };
}

function sideGauge(side: SideResult): GaugeModel | NoCoverageModel {
  if (side.status === "no_rule_fired") return noCoverage(side.fuzzified);
  return {
    kind: "value",
    exact: formatNumber(side.prediction.crisp),
    caption: formatPercent(side.prediction.crisp),
    fraction: side.prediction.crisp / 100,
  };
}

export interface ScenarioPanelModel {
  asIs: GaugeModel | NoCoverageModel;
  toBe: GaugeModel | NoCoverageModel;
  delta: string;
  effects: { process: string; metric: string; delta: string }[];
  adjusted: { metric: string; value: string }[];
}

export function scenarioPanelModel(response: CompareResponse): ScenarioPanelModel {
  return {
    asIs: sideGauge(response.as_is),
    toBe: sideGauge(response.to_be),
    delta:
      response.cost_delta === null
        ? "n/a (a side is uncovered)"
        : `${response.cost_delta >= 0 ? "+" : ""}${response.cost_delta.toFixed(2)} pts`,
    effects: response.applied_effects.map((e) => ({
      process: e.process,
      metric: e.metric,
      delta: `${e.delta >= 0 ? "+" : ""}${formatNumber(e.delta)}`,
    })),
    adjusted: Object.entries(response.adjusted_metrics).map(([metric, value]) => ({
      metric,
      value: formatNumber(value),
    })),
  };
}

export interface SweepRowModel {
  subset: string;
  delta: string;
  sortKey: number;
  covered: boolean;
}

export function sweepRowsModel(rows: SweepRow[]): SweepRowModel[] {
  return rows.map((row) => ({
    subset: row.processes.length ? row.processes.join(" + ") : "(none)",
    delta:
      row.report.cost_delta === null
        ? "uncovered"
        : `${row.report.cost_delta >= 0 ? "+" : ""}${row.report.cost_delta.toFixed(2)}`,
    sortKey: row.report.cost_delta ?? Number.POSITIVE_INFINITY,
    covered: row.report.cost_delta !== null,
  }));
}

export interface ExplorerModel {
  badge: string;
  lit: string[];
  steps: { index: number; vector: string; on: string[] }[];
}

export function explorerModel(response: AttractorResponse): ExplorerModel {
  const badge =
    response.kind === "fixed-point"
      ? `fixed point in ${response.iterations} steps`
      : `cycle of period ${response.period}`;
  return {
    badge,
    lit: response.on,
    steps: response.trajectory.map((vector, index) => ({
      index,
      vector: `(${vector.join(", ")})`,
      on: response.concepts.filter((_, k) => vector[k] === 1),
    })),
  };
}
