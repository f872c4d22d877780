"""As-is / to-be gap analysis: apply process effects, compare predicted cost.

A scenario is a crisp metric baseline plus a set of candidate processes.
Each selected process shifts the metrics it relates to by the deltas of
an effect table (only cells with a nonzero relation contribute, and each
delta's sign must agree with its relation cell). The cost model is then
evaluated on both the baseline and the adjusted metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .errors import NoRuleFiredError, SignConflictError, UnknownNameError
from .frm import Frm
from .fuzzy import CostPrediction, RuleBase, predict_cost

OK = "ok"
NO_RULE_FIRED = "no_rule_fired"


@dataclass(frozen=True)
class EffectTable:
    """Per (process, metric) crisp deltas, in the metric's own units.

    ``frm_name`` records which relational map the table was authored
    against; model files use it to validate delta signs at load.
    """

    name: str
    deltas: tuple[tuple[str, tuple[tuple[str, float], ...]], ...]
    frm_name: str = ""

    @classmethod
    def from_mapping(
        cls,
        name: str,
        deltas: Mapping[str, Mapping[str, float]],
        frm_name: str = "",
    ) -> "EffectTable":
        rows = tuple(
            (process, tuple((metric, float(d)) for metric, d in row.items()))
            for process, row in deltas.items()
        )
        return cls(name, rows, frm_name)

    def as_mapping(self) -> dict[str, dict[str, float]]:
        return {p: dict(row) for p, row in self.deltas}

    def delta(self, process: str, metric: str) -> float:
        return self.as_mapping().get(process, {}).get(metric, 0.0)


def default_effect_table(
    frm: Frm,
    rb: RuleBase,
    time_shift: float = -180.0,
    percent_shift: float = 25.0,
    frm_name: str = "",
) -> EffectTable:
    """Illustrative deltas for every nonzero relation cell.

    Time metrics move by ``time_shift`` minutes/day and percentage
    metrics by ``percent_shift`` points per improving process. These are
    placeholders meant to be calibrated per organization.
    """
    metric_names = set(rb.input_names)
    deltas: dict[str, dict[str, float]] = {}
    for process in frm.domain_nodes:
        row: dict[str, float] = {}
        for metric in frm.range_nodes:
            if metric not in metric_names:
                continue
            sign = frm.cell(process, metric)
            if sign == 0.0:
                continue
            variable = rb.input_variable(metric)
            magnitude = abs(time_shift) if variable.bounds[1] > 100 else abs(percent_shift)
            row[metric] = magnitude if sign > 0 else -magnitude
        if row:
            deltas[process] = row
    return EffectTable.from_mapping("default", deltas, frm_name)


@dataclass(frozen=True)
class Scenario:
    """Baseline metrics plus the candidate processes to implement."""

    baseline: tuple[tuple[str, float], ...]
    processes: tuple[str, ...]
    effects: EffectTable

    @classmethod
    def create(
        cls,
        baseline: Mapping[str, float],
        processes: tuple[str, ...] | list[str],
        effects: EffectTable,
    ) -> "Scenario":
        return cls(
            tuple((k, float(v)) for k, v in baseline.items()),
            tuple(processes),
            effects,
        )

    @property
    def baseline_map(self) -> dict[str, float]:
        return dict(self.baseline)


def validate_scenario(scenario: Scenario, frm: Frm, rb: RuleBase) -> None:
    """Raise on unknown names, out-of-range baselines, or sign conflicts."""
    for process in scenario.processes:
        if process not in frm.domain_nodes:
            raise UnknownNameError("process", process, frm.domain_nodes)
    baseline = scenario.baseline_map
    for var in rb.inputs:
        if var.name not in baseline:
            raise UnknownNameError("metric", var.name, tuple(baseline))
        lo, hi = var.bounds
        x = baseline[var.name]
        if not lo <= x <= hi:
            raise ValueError(
                f"baseline {var.name} = {x} outside range [{lo}, {hi}]"
            )
    for process, row in scenario.effects.as_mapping().items():
        if process not in frm.domain_nodes:
            raise UnknownNameError("process", process, frm.domain_nodes)
        for metric, delta in row.items():
            if metric not in frm.range_nodes:
                raise UnknownNameError("metric", metric, frm.range_nodes)
            relation = frm.cell(process, metric)
            if delta and not relation:
                raise SignConflictError(
                    f"delta {delta:+g} for ({process}, {metric}) has no supporting relation cell"
                )
            if delta and relation and (delta > 0) != (relation > 0):
                raise SignConflictError(
                    f"delta {delta:+g} for ({process}, {metric}) contradicts "
                    f"relation sign {relation:+g}"
                )


def apply_process_deltas(scenario: Scenario, frm: Frm, rb: RuleBase) -> dict[str, float]:
    """Adjusted crisp metrics after summing the selected processes' deltas.

    Deltas apply only where the relation cell is nonzero; the summed
    result is clamped to each metric's range.
    """
    validate_scenario(scenario, frm, rb)
    effects = scenario.effects.as_mapping()
    adjusted = {}
    for var in rb.inputs:
        value = scenario.baseline_map[var.name]
        for process in scenario.processes:
            if var.name in frm.range_nodes and frm.cell(process, var.name) != 0.0:
                value += effects.get(process, {}).get(var.name, 0.0)
        adjusted[var.name] = var.clamp(value)
    return adjusted


@dataclass(frozen=True)
class SideResult:
    """One side of the comparison: a prediction or a no-coverage status."""

    status: str
    prediction: CostPrediction | None = None
    fuzzified: tuple[tuple[str, tuple[tuple[str, float], ...]], ...] | None = None

    @classmethod
    def from_metrics(cls, rb: RuleBase, metrics: Mapping[str, float], resolution: int) -> "SideResult":
        try:
            return cls(OK, predict_cost(rb, metrics, resolution))
        except NoRuleFiredError as err:
            packed = tuple(
                (var, tuple(degrees.items())) for var, degrees in err.fuzzified.items()
            )
            return cls(NO_RULE_FIRED, None, packed)


@dataclass(frozen=True)
class GapAnalysisReport:
    """Before/after cost prediction with the applied effect trail."""

    as_is: SideResult
    to_be: SideResult
    adjusted_metrics: tuple[tuple[str, float], ...]
    applied_effects: tuple[tuple[str, str, float], ...]
    cost_delta: float | None

    @property
    def adjusted(self) -> dict[str, float]:
        return dict(self.adjusted_metrics)


def compare(
    scenario: Scenario,
    frm: Frm,
    rb: RuleBase,
    resolution: int = 101,
) -> GapAnalysisReport:
    """Predict cost on the baseline and on the adjusted metrics.

    A no-coverage outcome on either side is carried in that side's
    status rather than raised, so partial results stay reportable.
    """
    adjusted = apply_process_deltas(scenario, frm, rb)
    effects = scenario.effects.as_mapping()
    applied = tuple(
        (process, metric, delta)
        for process in scenario.processes
        for metric, delta in sorted(effects.get(process, {}).items())
        if frm.cell(process, metric) != 0.0 and metric in {v.name for v in rb.inputs}
    )
    as_is = SideResult.from_metrics(rb, scenario.baseline_map, resolution)
    to_be = SideResult.from_metrics(rb, adjusted, resolution)
    delta = None
    if as_is.prediction is not None and to_be.prediction is not None:
        delta = to_be.prediction.crisp - as_is.prediction.crisp
    return GapAnalysisReport(
        as_is=as_is,
        to_be=to_be,
        adjusted_metrics=tuple(sorted(adjusted.items())),
        applied_effects=applied,
        cost_delta=delta,
    )


@dataclass(frozen=True)
class SweepRow:
    processes: tuple[str, ...]
    report: GapAnalysisReport


def sweep(
    baseline: Mapping[str, float],
    frm: Frm,
    rb: RuleBase,
    effects: EffectTable,
    resolution: int = 101,
) -> tuple[SweepRow, ...]:
    """Compare every subset of the domain processes against the baseline.

    Rows are ordered most-improving first (uncovered comparisons last);
    ties break on subset size, then names, so the output is stable.
    """
    rows = []
    nodes = frm.domain_nodes
    for k in range(len(nodes) + 1):
        for subset in combinations(nodes, k):
            scenario = Scenario.create(baseline, subset, effects)
            rows.append(SweepRow(subset, compare(scenario, frm, rb, resolution)))
    rows.sort(
        key=lambda r: (
            r.report.cost_delta is None,
            r.report.cost_delta if r.report.cost_delta is not None else 0.0,
            len(r.processes),
            r.processes,
        )
    )
    return tuple(rows)
