"""HTTP API and static hosting for the what-if workbench.

All evaluation endpoints read one immutable model snapshot per request;
PUT /api/v1/model swaps the snapshot atomically, and the etag (the
sha-256 of the canonical serialization) tells clients which model a
result was computed against.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import fcm as fcm_mod
from . import scenario as scenario_mod
from .errors import (
    InvalidModelError,
    NonConvergenceError,
    NoRuleFiredError,
    SignConflictError,
    UnknownNameError,
)
from .frm import project
from .fuzzy import predict_cost
from .serialize import (
    attractor_jsonable,
    effect_summary_jsonable,
    fuzzified_jsonable,
    prediction_jsonable,
    report_jsonable,
)
from .store import ModelDocument, load_model, model_etag, save_model


@dataclass(frozen=True)
class Snapshot:
    document: ModelDocument
    canonical: bytes
    etag: str

    @classmethod
    def of(cls, document: ModelDocument) -> "Snapshot":
        canonical = save_model(document)
        return cls(document, canonical, model_etag(document))


class ApiError(Exception):
    def __init__(self, status: int, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.status = status
        self.message = message
        self.details = details or []


def _error_response(exc: ApiError) -> JSONResponse:
    body = {"error": {"message": exc.message}}
    if exc.details:
        body["error"]["details"] = exc.details
    return JSONResponse(body, status_code=exc.status)


def _field(body: dict, key: str, types, default=None, required: bool = False):
    if key not in body:
        if required:
            raise ApiError(400, f"missing field {key!r}")
        return default
    value = body[key]
    if not isinstance(value, types):
        raise ApiError(400, f"field {key!r} has the wrong type")
    return value


def find_web_dir(explicit: str | None = None) -> Path | None:
    """Resolve the workbench asset directory.

    An explicit flag/env value must contain an index.html; without one,
    fall back to a frontend build next to the current directory, then to
    any assets shipped inside the package.
    """
    if explicit:
        candidate = Path(explicit)
        if candidate.is_dir() and (candidate / "index.html").exists():
            return candidate
        raise FileNotFoundError(f"web dir {explicit!r} has no index.html")
    for candidate in (Path.cwd() / "frontend" / "dist", Path(__file__).parent / "web"):
        if candidate.is_dir() and (candidate / "index.html").exists():
            return candidate
    return None


def create_app(document: ModelDocument, web_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="fcmgap", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.snapshot = Snapshot.of(document)

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return _error_response(exc)

    async def read_body(request: Request) -> dict:
        import json

        raw = await request.body()
        try:
            body = json.loads(raw) if raw else {}
        except json.JSONDecodeError as exc:
            raise ApiError(400, f"malformed JSON body: {exc}")
        if not isinstance(body, dict):
            raise ApiError(400, "request body must be a JSON object")
        return body

    @app.get("/api/v1/model")
    async def get_model():
        snap: Snapshot = app.state.snapshot
        return Response(
            content=snap.canonical,
            media_type="application/json",
            headers={"ETag": f'"{snap.etag}"'},
        )

    @app.put("/api/v1/model")
    async def put_model(request: Request):
        raw = await request.body()
        try:
            document = load_model(raw)
        except InvalidModelError as exc:
            raise ApiError(400, "invalid model document", exc.errors)
        snap = Snapshot.of(document)
        app.state.snapshot = snap
        return JSONResponse({"etag": snap.etag})

    @app.post("/api/v1/fcm/simulate")
    async def fcm_simulate(request: Request):
        snap: Snapshot = app.state.snapshot
        body = await read_body(request)
        name = _field(body, "fcm", str, required=True)
        on = _field(body, "on", list, default=[])
        mode = _field(body, "mode", str, default="binary")
        max_iter = _field(body, "max_iter", int)
        if name not in snap.document.fcms:
            raise ApiError(404, f"unknown fcm {name!r}")
        if mode not in ("binary", "continuous"):
            raise ApiError(400, f"mode must be 'binary' or 'continuous', got {mode!r}")
        the_fcm = snap.document.fcms[name]
        try:
            initial = the_fcm.initial_state(on)
            if mode == "binary":
                attractor = fcm_mod.hidden_pattern(the_fcm, initial, max_iter)
            else:
                attractor = fcm_mod.continuous_run(the_fcm, initial, max_iter or 1000)
        except UnknownNameError as exc:
            raise ApiError(400, str(exc))
        except ValueError as exc:
            raise ApiError(400, str(exc))
        except NonConvergenceError as exc:
            raise ApiError(422, str(exc))
        payload = attractor_jsonable(the_fcm, attractor)
        payload["fcm"] = name
        payload["model_etag"] = snap.etag
        return JSONResponse(payload)

    @app.post("/api/v1/fuzzy/evaluate")
    async def fuzzy_evaluate(request: Request):
        snap: Snapshot = app.state.snapshot
        body = await read_body(request)
        metrics = _field(body, "metrics", dict, required=True)
        rb_name = _field(body, "rule_base", str, default="cost")
        resolution = _field(body, "resolution", int,
                            default=snap.document.settings.defuzz_resolution)
        if rb_name not in snap.document.rule_bases:
            raise ApiError(404, f"unknown rule base {rb_name!r}")
        rb = snap.document.rule_bases[rb_name]
        try:
            prediction = predict_cost(rb, metrics, resolution)
        except NoRuleFiredError as exc:
            return JSONResponse({
                "status": "no_rule_fired",
                "fuzzified": fuzzified_jsonable(exc.fuzzified),
                "model_etag": snap.etag,
            })
        except (UnknownNameError, ValueError, TypeError) as exc:
            raise ApiError(400, str(exc))
        return JSONResponse({
            "status": "ok",
            "prediction": prediction_jsonable(prediction),
            "model_etag": snap.etag,
        })

    @app.post("/api/v1/frm/project")
    async def frm_project(request: Request):
        snap: Snapshot = app.state.snapshot
        body = await read_body(request)
        name = _field(body, "frm", str, required=True)
        if name not in snap.document.frms:
            raise ApiError(404, f"unknown frm {name!r}")
        frm = snap.document.frms[name]
        on = _field(body, "on", list)
        activation = _field(body, "activation", dict)
        if (on is None) == (activation is None):
            raise ApiError(400, "provide exactly one of 'on' (names) or 'activation' (name->value)")
        try:
            vector = frm.domain_activation(on if on is not None else activation)
            summary = project(frm, vector)
        except UnknownNameError as exc:
            raise ApiError(400, str(exc))
        payload = effect_summary_jsonable(summary)
        payload["model_etag"] = snap.etag
        return JSONResponse(payload)

    def _scenario_parts(snap: Snapshot, body: dict):
        rb_name = _field(body, "rule_base", str, default="cost")
        table_name = _field(body, "effect_table", str, default="default")
        baseline = _field(body, "baseline", dict, required=True)
        if rb_name not in snap.document.rule_bases:
            raise ApiError(404, f"unknown rule base {rb_name!r}")
        if table_name not in snap.document.effect_tables:
            raise ApiError(404, f"unknown effect table {table_name!r}")
        table = snap.document.effect_tables[table_name]
        frm = snap.document.frms.get(table.frm_name)
        if frm is None:
            raise ApiError(400, f"effect table {table_name!r} references missing frm {table.frm_name!r}")
        resolution = _field(body, "resolution", int,
                            default=snap.document.settings.defuzz_resolution)
        return snap.document.rule_bases[rb_name], frm, table, baseline, resolution

    @app.post("/api/v1/scenario/compare")
    async def scenario_compare(request: Request):
        snap: Snapshot = app.state.snapshot
        body = await read_body(request)
        rb, frm, table, baseline, resolution = _scenario_parts(snap, body)
        processes = _field(body, "processes", list, default=[])
        scenario = scenario_mod.Scenario.create(baseline, tuple(processes), table)
        try:
            report = scenario_mod.compare(scenario, frm, rb, resolution)
        except (UnknownNameError, SignConflictError, ValueError, TypeError) as exc:
            raise ApiError(400, str(exc))
        payload = report_jsonable(report)
        payload["model_etag"] = snap.etag
        return JSONResponse(payload)

    @app.post("/api/v1/scenario/sweep")
    async def scenario_sweep(request: Request):
        snap: Snapshot = app.state.snapshot
        body = await read_body(request)
        rb, frm, table, baseline, resolution = _scenario_parts(snap, body)
        try:
            rows = scenario_mod.sweep(baseline, frm, rb, table, resolution)
        except (UnknownNameError, SignConflictError, ValueError, TypeError) as exc:
            raise ApiError(400, str(exc))
        payload = {
            "rows": [
                {"processes": list(r.processes), "report": report_jsonable(r.report)}
                for r in rows
            ],
            "model_etag": snap.etag,
        }
        return JSONResponse(payload)

    if web_dir is not None:
        app.mount("/", StaticFiles(directory=web_dir, html=True), name="workbench")

    return app
