"""Plain-data converters shared by the CLI's structured output and the
HTTP API, so both surfaces emit numerically identical bodies."""

from __future__ import annotations

from .fcm import Attractor, Fcm
from .frm import EffectSummary
from .fuzzy import CostPrediction
from .scenario import GapAnalysisReport, SideResult


def attractor_jsonable(fcm: Fcm, attractor: Attractor) -> dict:
    return {
        "kind": attractor.kind,
        "period": attractor.period,
        "iterations": attractor.iterations,
        "concepts": list(fcm.concepts),
        "trajectory": [list(state.values) for state in attractor.trajectory],
        "final": {c: v for c, v in zip(fcm.concepts, attractor.final_state.values)},
        "on": list(attractor.final_state.on_concepts(fcm)),
    }


def prediction_jsonable(prediction: CostPrediction) -> dict:
    return {
        "crisp": prediction.crisp,
        "fired_rules": [
            {"rule": index, "dos": dos} for index, dos in prediction.fired_rules
        ],
        "output_memberships": {t: h for t, h in prediction.output_memberships},
        "defuzz_resolution": prediction.defuzz_resolution,
        "clamped_inputs": list(prediction.clamped_inputs),
    }


def fuzzified_jsonable(fuzzified) -> dict:
    if isinstance(fuzzified, dict):
        return {var: dict(degrees) for var, degrees in fuzzified.items()}
    return {var: dict(degrees) for var, degrees in fuzzified}


def side_jsonable(side: SideResult) -> dict:
    payload: dict = {"status": side.status}
    if side.prediction is not None:
        payload["prediction"] = prediction_jsonable(side.prediction)
    if side.fuzzified is not None:
        payload["fuzzified"] = fuzzified_jsonable(side.fuzzified)
    return payload


def report_jsonable(report: GapAnalysisReport) -> dict:
    return {
        "as_is": side_jsonable(report.as_is),
        "to_be": side_jsonable(report.to_be),
        "adjusted_metrics": {k: v for k, v in report.adjusted_metrics},
        "applied_effects": [
            {"process": p, "metric": m, "delta": d}
            for p, m, d in report.applied_effects
        ],
        "cost_delta": report.cost_delta,
    }


def effect_summary_jsonable(summary: EffectSummary) -> dict:
    return {
        "effects": [
            {"node": node, "value": value, "direction": direction}
            for node, value, direction in summary.effects
        ]
    }
