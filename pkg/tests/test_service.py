"""HTTP API behavior: endpoints, etag semantics, snapshot replacement."""

from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from fcmgap.builtins import itil_model
from fcmgap.service import create_app, find_web_dir
from fcmgap.store import save_model, to_jsonable

RULE1_METRICS = {
    "AuthorizedChanges": 75,
    "InterruptTime": 360,
    "ResponseTime": 360,
    "ProcessOrientation": 50,
}

GAP_METRICS = {
    "AuthorizedChanges": 50,
    "InterruptTime": 0,
    "ResponseTime": 1440,
    "ProcessOrientation": 50,
}

BASELINE = {
    "InterruptTime": 540,
    "ResponseTime": 540,
    "ProcessOrientation": 37.5,
    "AuthorizedChanges": 50,
}


@pytest.fixture()
def client():
    return TestClient(create_app(itil_model()))


class TestModelEndpoint:
    def test_get_returns_canonical_bytes_and_etag(self, client):
        response = client.get("/api/v1/model")
        assert response.status_code == 200
        assert response.content == save_model(itil_model())
        assert response.headers["ETag"].strip('"')

    def test_put_swaps_the_snapshot_atomically(self, client):
        old_etag = client.get("/api/v1/model").headers["ETag"]
        raw = to_jsonable(itil_model())
        # make rule 1 predict Much instead of Little
        raw["rule_bases"][0]["rules"][0]["then"] = "Much"
        response = client.put("/api/v1/model", content=json.dumps(raw))
        assert response.status_code == 200
        assert f'"{response.json()["etag"]}"' != old_etag
        crisp = client.post(
            "/api/v1/fuzzy/evaluate", json={"metrics": RULE1_METRICS}
        ).json()["prediction"]["crisp"]
        assert crisp == pytest.approx(75.0)

    def test_put_of_identical_document_keeps_the_etag(self, client):
        etag = client.get("/api/v1/model").headers["ETag"].strip('"')
        response = client.put("/api/v1/model", content=save_model(itil_model()))
        assert response.json()["etag"] == etag

    def test_put_invalid_document_is_rejected_with_details(self, client):
        response = client.put("/api/v1/model", content=b'{"format_version": 99}')
        assert response.status_code == 400
        assert any("unsupported" in d for d in response.json()["error"]["details"])

    def test_put_syntax_error_is_rejected(self, client):
        response = client.put("/api/v1/model", content=b"{oops")
        assert response.status_code == 400


class TestEvaluate:
    def test_rule1_centers(self, client):
        response = client.post("/api/v1/fuzzy/evaluate", json={"metrics": RULE1_METRICS})
        body = response.json()
        assert body["status"] == "ok"
        assert body["prediction"]["crisp"] == 25.0
        assert body["prediction"]["fired_rules"] == [{"rule": 0, "dos": 1.0}]
        assert body["model_etag"]

    def test_no_rule_fired_is_a_structured_status(self, client):
        response = client.post("/api/v1/fuzzy/evaluate", json={"metrics": GAP_METRICS})
        body = response.json()
        assert response.status_code == 200
        assert body["status"] == "no_rule_fired"
        assert body["fuzzified"]["ResponseTime"]["TooMuch"] == 1.0

    def test_missing_metric_is_a_400(self, client):
        response = client.post(
            "/api/v1/fuzzy/evaluate", json={"metrics": {"InterruptTime": 1}})
        assert response.status_code == 400

    def test_unknown_rule_base_is_a_404(self, client):
        response = client.post(
            "/api/v1/fuzzy/evaluate",
            json={"metrics": RULE1_METRICS, "rule_base": "nope"})
        assert response.status_code == 404

    def test_statelessness_identical_posts_identical_bodies(self, client):
        payload = {"metrics": RULE1_METRICS}
        first = client.post("/api/v1/fuzzy/evaluate", json=payload)
        second = client.post("/api/v1/fuzzy/evaluate", json=payload)
        assert first.content == second.content

    def test_malformed_body_is_a_400(self, client):
        response = client.post(
            "/api/v1/fuzzy/evaluate",
            content=b"not json",
            headers={"Content-Type": "application/json"},
        )
        assert response.status_code == 400


class TestSimulate:
    def test_binary_run(self, client):
        response = client.post(
            "/api/v1/fcm/simulate", json={"fcm": "binary", "on": ["ResponseTime"]})
        body = response.json()
        assert body["kind"] == "fixed-point"
        assert body["on"] == ["ResponseTime", "Cost", "Interrupt"]
        assert body["iterations"] == 2

    def test_unknown_fcm_404(self, client):
        response = client.post("/api/v1/fcm/simulate", json={"fcm": "nope", "on": []})
        assert response.status_code == 404

    def test_unknown_concept_400(self, client):
        response = client.post(
            "/api/v1/fcm/simulate", json={"fcm": "binary", "on": ["Bogus"]})
        assert response.status_code == 400

    def test_continuous_mode(self, client):
        response = client.post("/api/v1/fcm/simulate", json={
            "fcm": "weighted", "on": ["ResponseTime"], "mode": "continuous"})
        assert response.json()["kind"] == "fixed-point"


class TestFrmProject:
    def test_by_names(self, client):
        response = client.post(
            "/api/v1/frm/project", json={"frm": "itil", "on": ["IncidentMgmt"]})
        effects = {e["node"]: e["direction"] for e in response.json()["effects"]}
        assert effects["ResponseTime"] == "decrease"
        assert effects["Recording"] == "increase"

    def test_by_activation_map(self, client):
        response = client.post(
            "/api/v1/frm/project",
            json={"frm": "itil", "activation": {"ProblemMgmt": 0.5}})
        effects = {e["node"]: e["value"] for e in response.json()["effects"]}
        assert effects["InterruptTime"] == -0.5

    def test_requires_exactly_one_activation_form(self, client):
        response = client.post("/api/v1/frm/project", json={"frm": "itil"})
        assert response.status_code == 400
        both = client.post(
            "/api/v1/frm/project",
            json={"frm": "itil", "on": [], "activation": {}})
        assert both.status_code == 400


class TestScenarioEndpoints:
    def test_compare(self, client):
        response = client.post("/api/v1/scenario/compare", json={
            "baseline": BASELINE, "processes": ["ChangeMgmt"]})
        body = response.json()
        assert body["as_is"]["prediction"]["crisp"] == pytest.approx(50.0)
        assert body["to_be"]["prediction"]["crisp"] == pytest.approx(25.0)
        assert body["cost_delta"] == pytest.approx(-25.0)

    def test_compare_rejects_bad_process(self, client):
        response = client.post("/api/v1/scenario/compare", json={
            "baseline": BASELINE, "processes": ["Foo"]})
        assert response.status_code == 400

    def test_sweep_has_32_rows_sorted_by_delta(self, client):
        response = client.post("/api/v1/scenario/sweep", json={"baseline": BASELINE})
        rows = response.json()["rows"]
        assert len(rows) == 32
        deltas = [r["report"]["cost_delta"] for r in rows
                  if r["report"]["cost_delta"] is not None]
        assert deltas == sorted(deltas)
        identity = next(r for r in rows if r["processes"] == [])
        assert identity["report"]["cost_delta"] == 0.0


class TestStaticWorkbench:
    def test_serves_assets_when_web_dir_given(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>workbench</body></html>")
        client = TestClient(create_app(itil_model(), web_dir=tmp_path))
        response = client.get("/")
        assert response.status_code == 200
        assert "workbench" in response.text

    def test_find_web_dir_rejects_missing_explicit_dir(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            find_web_dir(str(tmp_path / "nope"))

    def test_api_still_works_alongside_static_mount(self, tmp_path):
        (tmp_path / "index.html").write_text("<html></html>")
        client = TestClient(create_app(itil_model(), web_dir=tmp_path))
        response = client.post(
            "/api/v1/fuzzy/evaluate", json={"metrics": RULE1_METRICS})
        assert response.json()["status"] == "ok"
