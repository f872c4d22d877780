import { describe, expect, it, vi } from "vitest";

import {
  RequestSequencer,
  StalenessTracker,
  WorkbenchState,
  clampToRange,
  debounce,
  metricSpecs,
} from "../src/state.js";
import type { ModelVariable } from "../src/types.js";

const VARIABLES: ModelVariable[] = [
  { name: "InterruptTime", range: [0, 1440], unit: "min/day", terms: [] },
  { name: "ResponseTime", range: [0, 1440], unit: "min/day", terms: [] },
  { name: "ProcessOrientation", range: [0, 100], unit: "%", terms: [] },
  { name: "AuthorizedChanges", range: [0, 100], unit: "%", terms: [] },
  { name: "Cost", range: [0, 100], unit: "% of budget", terms: [] },
];

const PROCESSES = ["IncidentMgmt", "ProblemMgmt", "ChangeMgmt"];

function freshState(): WorkbenchState {
  return new WorkbenchState(metricSpecs(VARIABLES), PROCESSES);
}

describe("metricSpecs", () => {
  it("keeps only the four input metrics, in canonical order", () => {
    const specs = metricSpecs(VARIABLES);
    expect(specs.map((s) => s.name)).toEqual([
      "InterruptTime",
      "ResponseTime",
      "ProcessOrientation",
      "AuthorizedChanges",
    ]);
    expect(specs[0].hi).toBe(1440);
    expect(specs[2].unit).toBe("%");
  });
});

describe("WorkbenchState", () => {
  it("starts every slider mid-range", () => {
    const state = freshState();
    expect(state.metrics.get("InterruptTime")).toBe(720);
    expect(state.metrics.get("AuthorizedChanges")).toBe(50);
  });

  it("clamps slider writes so out-of-range values cannot be submitted", () => {
    const state = freshState();
    expect(state.setMetric("InterruptTime", 99999)).toBe(1440);
    expect(state.setMetric("InterruptTime", -5)).toBe(0);
    expect(state.metricValues().InterruptTime).toBe(0);
    expect(clampToRange(state.specs[0], Number.NaN)).toBe(0);
  });

  it("rejects unknown metric names", () => {
    expect(() => freshState().setMetric("Nope", 1)).toThrow(/unknown metric/);
  });

  it("toggles processes on and off", () => {
    const state = freshState();
    expect(state.toggleProcess("ChangeMgmt")).toBe(true);
    expect([...state.toggledProcesses]).toEqual(["ChangeMgmt"]);
    expect(state.toggleProcess("ChangeMgmt")).toBe(false);
    expect(state.toggledProcesses.size).toBe(0);
    expect(() => state.toggleProcess("Nope")).toThrow(/unknown process/);
  });
});

describe("StalenessTracker", () => {
  it("flags results once the live etag moves past them", () => {
    const tracker = new StalenessTracker();
    tracker.updateLiveEtag("e1");
    tracker.recordResult("dashboard", "e1");
    expect(tracker.isStale("dashboard")).toBe(false);
    tracker.updateLiveEtag("e2");
    expect(tracker.isStale("dashboard")).toBe(true);
    tracker.recordResult("dashboard", "e2");
    expect(tracker.isStale("dashboard")).toBe(false);
  });

  it("never flags panels that have no result yet", () => {
    const tracker = new StalenessTracker();
    tracker.updateLiveEtag("e1");
    expect(tracker.isStale("scenario")).toBe(false);
  });
});

describe("RequestSequencer", () => {
  it("only the latest ticket may apply its response", () => {
    const seq = new RequestSequencer();
    const first = seq.next();
    const second = seq.next();
    expect(seq.isCurrent(first)).toBe(false);
    expect(seq.isCurrent(second)).toBe(true);
  });
});

describe("debounce", () => {
  it("collapses a burst into one trailing call", () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const run = debounce((v: number) => calls.push(v), 150);
    run(1);
    run(2);
    run(3);
    vi.advanceTimersByTime(149);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(2);
    expect(calls).toEqual([3]);
    vi.useRealTimers();
  });
});
