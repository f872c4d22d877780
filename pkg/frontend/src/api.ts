// Thin client for the /api/v1 surface. Every displayed number comes from
// these responses verbatim; the UI never recomputes inference locally.

import type {
  AttractorResponse,
  CompareResponse,
  EvaluateResponse,
  ModelDocument,
  ProjectResponse,
  SweepResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.base}/api/v1${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      let message = `${response.status}`;
      try {
        const payload = await response.json();
        message = payload?.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  async model(): Promise<{ document: ModelDocument; etag: string }> {
    const response = await this.fetchImpl(`${this.base}/api/v1/model`);
    if (!response.ok) {
      throw new ApiError(response.status, "cannot fetch model");
    }
    const etag = (response.headers.get("ETag") ?? "").replaceAll('"', "");
    return { document: (await response.json()) as ModelDocument, etag };
  }

  async modelEtag(): Promise<string> {
    const { etag } = await this.model();
    return etag;
  }

  evaluate(metrics: Record<string, number>, resolution?: number): Promise<EvaluateResponse> {
    return this.post("/fuzzy/evaluate", resolution ? { metrics, resolution } : { metrics });
  }

  simulate(fcm: string, on: string[], mode: "binary" | "continuous" = "binary"): Promise<AttractorResponse> {
    return this.post("/fcm/simulate", { fcm, on, mode });
  }

  project(frm: string, on: string[]): Promise<ProjectResponse> {
    return this.post("/frm/project", { frm, on });
  }

  compare(baseline: Record<string, number>, processes: string[]): Promise<CompareResponse> {
    return this.post("/scenario/compare", { baseline, processes });
  }

  sweep(baseline: Record<string, number>): Promise<SweepResponse> {
    return this.post("/scenario/sweep", { baseline });
  }
}
