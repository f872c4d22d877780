"""Command-line interface.

Exit codes: 0 success, 2 usage/validation, 3 non-convergence,
4 no rule fired, 5 I/O. All read commands take ``--format
text|structured``; structured output is the same JSON the HTTP API
serves, so scripts can consume either interchangeably.
"""

from __future__ import annotations

import json
import sys

import click

from . import fcm as fcm_mod
from . import scenario as scenario_mod
from .errors import (
    InvalidModelError,
    NonConvergenceError,
    NoRuleFiredError,
    SignConflictError,
    UnknownNameError,
)
from .fuzzy import predict_cost
from .serialize import attractor_jsonable, prediction_jsonable, report_jsonable
from .store import ModelDocument, model_etag, resolve_model

EXIT_USAGE = 2
EXIT_NON_CONVERGENCE = 3
EXIT_NO_RULE = 4
EXIT_IO = 5

DEFAULT_MODEL = "itil-service-support"

METRIC_ALIASES = {
    "auth": "AuthorizedChanges",
    "interrupt": "InterruptTime",
    "po": "ProcessOrientation",
    "response": "ResponseTime",
}

model_option = click.option(
    "--model",
    "model_spec",
    envvar="FCMGAP_MODEL",
    default=DEFAULT_MODEL,
    show_default=True,
    help="Model file path or bundled model name (env: FCMGAP_MODEL).",
)

format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "structured"]),
    default="text",
    show_default=True,
)


def _load(model_spec: str) -> ModelDocument:
    try:
        return resolve_model(model_spec)
    except FileNotFoundError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    except OSError as exc:
        click.echo(f"error: cannot read {model_spec}: {exc}", err=True)
        sys.exit(EXIT_IO)
    except InvalidModelError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


@click.group()
@click.version_option(package_name="fcmgap")
def main() -> None:
    """Causal-map simulation, fuzzy cost prediction, and gap analysis."""


@main.group()
def fcm() -> None:
    """Cognitive-map simulation."""


def _pick_fcm(doc: ModelDocument, name: str | None, mode: str) -> tuple[str, fcm_mod.Fcm]:
    if name is not None:
        if name not in doc.fcms:
            _fail_usage(f"unknown fcm {name!r}; model has: {', '.join(doc.fcms) or 'none'}")
        return name, doc.fcms[name]
    wanted = fcm_mod.BINARY if mode == "binary" else fcm_mod.WEIGHTED
    for fname, f in doc.fcms.items():
        if f.mode == wanted:
            return fname, f
    if doc.fcms:
        first = next(iter(doc.fcms))
        return first, doc.fcms[first]
    _fail_usage("model declares no fcms")
    raise AssertionError("unreachable")


@fcm.command()
@model_option
@click.option("--fcm", "fcm_name", default=None, help="FCM name within the model.")
@click.option("--on", "on", multiple=True, help="Concept to switch on (repeatable).")
@click.option("--max-iter", type=int, default=None, help="Step budget (default 2^n + 1).")
@click.option("--mode", type=click.Choice(["binary", "continuous"]), default="binary", show_default=True)
@click.option("--trace", is_flag=True, help="Print every iteration state.")
@format_option
def simulate(model_spec, fcm_name, on, max_iter, mode, trace, fmt) -> None:
    """Iterate from the given ON concepts to the attractor."""
    if not on:
        _fail_usage("at least one --on CONCEPT is required")
    doc = _load(model_spec)
    fcm_display_name, the_fcm = _pick_fcm(doc, fcm_name, mode)
    try:
        initial = the_fcm.initial_state(on)
        if mode == "binary":
            attractor = fcm_mod.hidden_pattern(the_fcm, initial, max_iter)
        else:
            attractor = fcm_mod.continuous_run(the_fcm, initial, max_iter or 1000)
    except UnknownNameError as exc:
        _fail_usage(str(exc))
    except ValueError as exc:
        _fail_usage(str(exc))
    except NonConvergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NON_CONVERGENCE)

    if fmt == "structured":
        payload = attractor_jsonable(the_fcm, attractor)
        payload["fcm"] = fcm_display_name
        click.echo(json.dumps(payload, indent=2))
        return

    if trace:
        for i, state in enumerate(attractor.trajectory):
            values = " ".join(_fmt_activation(v) for v in state.values)
            click.echo(f"step {i}: ({values})")
    click.echo(f"fcm: {fcm_display_name}")
    click.echo(f"attractor: {attractor.kind} (period {attractor.period}, {attractor.iterations} iterations)")
    final = attractor.final_state
    pairs = " ".join(
        f"{c}={_fmt_activation(v)}" for c, v in zip(the_fcm.concepts, final.values)
    )
    click.echo(f"final state: {pairs}")
    lit = final.on_concepts(the_fcm)
    if lit:
        click.echo("on: {" + ", ".join(lit) + "}")


def _fmt_activation(v) -> str:
    if v in (0, 1):
        return str(int(v))
    return f"{v:.4f}"


@main.group()
def fuzzy() -> None:
    """Fuzzy cost prediction."""


@fuzzy.command("eval")
@model_option
@click.option("--rule-base", "rb_name", default="cost", show_default=True)
@click.option("--auth", type=float, required=True, help="Authorized changes, % (0-100).")
@click.option("--interrupt", type=float, required=True, help="Interrupt time, min/day (0-1440).")
@click.option("--response", type=float, required=True, help="Response time, min/day (0-1440).")
@click.option("--po", type=float, required=True, help="Process orientation, % (0-100).")
@click.option("--resolution", type=int, default=None, help="Defuzzification samples (default from model).")
@format_option
def fuzzy_eval(model_spec, rb_name, auth, interrupt, response, po, resolution, fmt) -> None:
    """Predict cost of support for one crisp metric vector."""
    doc = _load(model_spec)
    if rb_name not in doc.rule_bases:
        _fail_usage(f"unknown rule base {rb_name!r}; model has: {', '.join(doc.rule_bases) or 'none'}")
    rb = doc.rule_bases[rb_name]
    metrics = {
        "AuthorizedChanges": auth,
        "InterruptTime": interrupt,
        "ResponseTime": response,
        "ProcessOrientation": po,
    }
    resolution = resolution or doc.settings.defuzz_resolution
    try:
        prediction = predict_cost(rb, metrics, resolution)
    except NoRuleFiredError as exc:
        click.echo("error: no rule fired for the given inputs", err=True)
        for var, degrees in exc.fuzzified.items():
            active = {t: round(d, 4) for t, d in degrees.items() if d > 0}
            click.echo(f"  {var}: {active}", err=True)
        sys.exit(EXIT_NO_RULE)
    except UnknownNameError as exc:
        _fail_usage(str(exc))

    if fmt == "structured":
        click.echo(json.dumps(prediction_jsonable(prediction), indent=2))
        return
    for name in prediction.clamped_inputs:
        variable = rb.input_variable(name)
        click.echo(
            f"warning: {name} outside [{variable.bounds[0]:g}, {variable.bounds[1]:g}], clamped",
            err=True,
        )
    fired = ", ".join(f"rule {i + 1} (DoS {dos:.2f})" for i, dos in prediction.fired_rules)
    click.echo(f"cost {prediction.crisp:.1f}% of budget — fired: {fired}")
    for term, height in prediction.output_memberships:
        if height > 0:
            click.echo(f"  {term}: clipped at {height:.3f}")


@main.group()
def scenario() -> None:
    """As-is / to-be comparison."""


def _parse_baseline(pairs: tuple[str, ...]) -> dict[str, float]:
    baseline = {}
    for pair in pairs:
        if "=" not in pair:
            _fail_usage(f"--baseline expects key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        key = key.strip()
        name = METRIC_ALIASES.get(key.lower(), key)
        try:
            baseline[name] = float(value)
        except ValueError:
            _fail_usage(f"--baseline {key}: {value!r} is not a number")
    return baseline


def _scenario_parts(doc: ModelDocument, rb_name: str, table_name: str):
    if rb_name not in doc.rule_bases:
        _fail_usage(f"unknown rule base {rb_name!r}")
    if table_name not in doc.effect_tables:
        _fail_usage(f"unknown effect table {table_name!r}; model has: {', '.join(doc.effect_tables) or 'none'}")
    table = doc.effect_tables[table_name]
    if table.frm_name not in doc.frms:
        _fail_usage(f"effect table {table_name!r} references missing frm {table.frm_name!r}")
    return doc.rule_bases[rb_name], doc.frms[table.frm_name], table


@scenario.command()
@model_option
@click.option("--baseline", "baseline_pairs", multiple=True, required=True,
              help="Metric value as key=value (keys: auth, interrupt, response, po).")
@click.option("--process", "processes", multiple=True, help="Process to implement (repeatable).")
@click.option("--rule-base", "rb_name", default="cost", show_default=True)
@click.option("--effect-table", "table_name", default="default", show_default=True)
@click.option("--resolution", type=int, default=None)
@format_option
def compare(model_spec, baseline_pairs, processes, rb_name, table_name, resolution, fmt) -> None:
    """Compare predicted cost before and after implementing processes."""
    doc = _load(model_spec)
    rb, frm, table = _scenario_parts(doc, rb_name, table_name)
    baseline = _parse_baseline(baseline_pairs)
    resolution = resolution or doc.settings.defuzz_resolution
    spec = scenario_mod.Scenario.create(baseline, tuple(processes), table)
    try:
        report = scenario_mod.compare(spec, frm, rb, resolution)
    except (UnknownNameError, SignConflictError, ValueError) as exc:
        _fail_usage(str(exc))

    if fmt == "structured":
        click.echo(json.dumps(report_jsonable(report), indent=2))
        return
    _echo_side("as-is", report.as_is)
    _echo_side("to-be", report.to_be)
    if report.cost_delta is not None:
        click.echo(f"cost delta: {report.cost_delta:+.2f} percentage points")
    adjusted = " ".join(f"{k}={v:g}" for k, v in report.adjusted_metrics)
    click.echo(f"adjusted metrics: {adjusted}")
    if report.applied_effects:
        click.echo("applied effects:")
        for process, metric, delta in report.applied_effects:
            click.echo(f"  {process} -> {metric}: {delta:+g}")
    else:
        click.echo("applied effects: none")


def _echo_side(label: str, side: scenario_mod.SideResult) -> None:
    if side.prediction is not None:
        click.echo(f"{label} cost: {side.prediction.crisp:.2f}% of budget")
    else:
        click.echo(f"{label} cost: no rule fired (inputs outside rule coverage)")


@scenario.command()
@model_option
@click.option("--baseline", "baseline_pairs", multiple=True, required=True)
@click.option("--rule-base", "rb_name", default="cost", show_default=True)
@click.option("--effect-table", "table_name", default="default", show_default=True)
@click.option("--resolution", type=int, default=None)
@format_option
def sweep(model_spec, baseline_pairs, rb_name, table_name, resolution, fmt) -> None:
    """Rank every process subset by its predicted cost change."""
    doc = _load(model_spec)
    rb, frm, table = _scenario_parts(doc, rb_name, table_name)
    baseline = _parse_baseline(baseline_pairs)
    resolution = resolution or doc.settings.defuzz_resolution
    try:
        rows = scenario_mod.sweep(baseline, frm, rb, table, resolution)
    except (UnknownNameError, SignConflictError, ValueError) as exc:
        _fail_usage(str(exc))

    if fmt == "structured":
        payload = [
            {"processes": list(r.processes), "report": report_jsonable(r.report)}
            for r in rows
        ]
        click.echo(json.dumps(payload, indent=2))
        return
    for row in rows:
        subset = "{" + ", ".join(row.processes) + "}" if row.processes else "{}"
        delta = row.report.cost_delta
        shown = f"{delta:+.2f}" if delta is not None else "uncovered"
        click.echo(f"{shown:>10}  {subset}")


@main.group()
def model() -> None:
    """Model document utilities."""


@model.command()
@model_option
def show(model_spec) -> None:
    """Print the canonical model document."""
    doc = _load(model_spec)
    from .store import save_model

    click.echo(save_model(doc).decode("utf-8"), nl=False)
    click.echo(f"etag: {model_etag(doc)}", err=True)


@main.command()
@model_option
@click.option("--listen", default="127.0.0.1:8000", show_default=True, help="ADDR:PORT to bind.")
@click.option("--web-dir", default=None, envvar="FCMGAP_WEB_DIR",
              help="Directory of built workbench assets to serve at /.")
def serve(model_spec, listen, web_dir) -> None:
    """Run the HTTP API (and the web workbench, when assets exist)."""
    doc = _load(model_spec)
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        _fail_usage(f"--listen expects ADDR:PORT, got {listen!r}")

    import uvicorn

    from .service import create_app, find_web_dir

    try:
        resolved_web_dir = find_web_dir(web_dir)
    except FileNotFoundError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    app = create_app(doc, web_dir=resolved_web_dir)
    try:
        uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    except SystemExit:
        raise
    except OSError as exc:
        click.echo(f"error: cannot bind {listen}: {exc}", err=True)
        sys.exit(EXIT_IO)


if __name__ == "__main__":
    main()
