// Payload shapes of the /api/v1 endpoints.

export interface CostPrediction {
  crisp: number;
  fired_rules: { rule: number; dos: number }[];
  output_memberships: Record<string, number>;
  defuzz_resolution: number;
  clamped_inputs: string[];
}

export type Fuzzified = Record<string, Record<string, number>>;

export type EvaluateResponse =
  | { status: "ok"; prediction: CostPrediction; model_etag: string }
  | { status: "no_rule_fired"; fuzzified: Fuzzified; model_etag: string };

export interface AttractorResponse {
  kind: "fixed-point" | "limit-cycle";
  period: number;
  iterations: number;
  concepts: string[];
  trajectory: number[][];
  final: Record<string, number>;
  on: string[];
  fcm: string;
  model_etag: string;
}

export interface EffectEntry {
  node: string;
  value: number;
  direction: "increase" | "decrease" | "none";
}

export interface ProjectResponse {
  effects: EffectEntry[];
  model_etag: string;
}

export type SideResult =
  | { status: "ok"; prediction: CostPrediction }
  | { status: "no_rule_fired"; fuzzified: Fuzzified };

export interface CompareResponse {
  as_is: SideResult;
  to_be: SideResult;
  adjusted_metrics: Record<string, number>;
  applied_effects: { process: string; metric: string; delta: number }[];
  cost_delta: number | null;
  model_etag: string;
}

export interface SweepRow {
  processes: string[];
  report: Omit<CompareResponse, "model_etag">;
}

export interface SweepResponse {
  rows: SweepRow[];
  model_etag: string;
}

// relevant slices of the model document itself
export interface ModelFcm {
  name: string;
  mode: "binary" | "weighted";
  concepts: string[];
  weights: number[][];
}

export interface ModelVariable {
  name: string;
  range: [number, number];
  unit: string;
  terms: { name: string; shape: string; points: number[] }[];
}

export interface ModelDocument {
  format_version: number;
  fcms: ModelFcm[];
  variables: ModelVariable[];
  rule_bases: {
    name: string;
    inputs: string[];
    output: string;
    rules: { if: Record<string, string>; then: string }[];
  }[];
  frms: { name: string; domain: string[]; range: string[]; relation: number[][] }[];
  effect_tables: { name: string; frm: string; deltas: Record<string, Record<string, number>> }[];
  settings: Record<string, unknown>;
}
