"""Tests for effect application and the as-is/to-be comparison."""

from __future__ import annotations

import pytest

from fcmgap.errors import SignConflictError, UnknownNameError
from fcmgap.scenario import (
    EffectTable,
    Scenario,
    apply_process_deltas,
    compare,
    sweep,
    validate_scenario,
)

COVERED_BASELINE = {
    "InterruptTime": 540,
    "ResponseTime": 540,
    "ProcessOrientation": 37.5,
    "AuthorizedChanges": 50,
}

BEST_BASELINE = {
    "InterruptTime": 0,
    "ResponseTime": 0,
    "ProcessOrientation": 100,
    "AuthorizedChanges": 100,
}


@pytest.fixture()
def default_table(itil_doc):
    return itil_doc.effect_tables["default"]


class TestDefaultEffectTable:
    def test_change_management_row(self, default_table):
        deltas = default_table.as_mapping()
        assert deltas["ChangeMgmt"] == {
            "AuthorizedChanges": 25.0,
            "ProcessOrientation": 25.0,
        }

    def test_incident_management_row(self, default_table):
        deltas = default_table.as_mapping()
        assert deltas["IncidentMgmt"] == {
            "AuthorizedChanges": 25.0,
            "ProcessOrientation": 25.0,
            "ResponseTime": -180.0,
            "InterruptTime": -180.0,
        }

    def test_service_desk_has_no_row(self, default_table):
        assert "ServiceDesk" not in default_table.as_mapping()

    def test_every_delta_sits_on_a_nonzero_cell(self, default_table, itil_frm):
        for process, row in default_table.as_mapping().items():
            for metric, delta in row.items():
                relation = itil_frm.cell(process, metric)
                assert relation != 0.0
                assert (delta > 0) == (relation > 0)


class TestApplyDeltas:
    def test_change_scenario_with_custom_deltas(self, itil_frm, cost_rb):
        table = EffectTable.from_mapping("custom", {
            "ChangeMgmt": {"AuthorizedChanges": 40.0, "ProcessOrientation": 30.0},
        }, "itil")
        scenario = Scenario.create(
            {"InterruptTime": 700, "ResponseTime": 700,
             "ProcessOrientation": 20, "AuthorizedChanges": 0},
            ("ChangeMgmt",),
            table,
        )
        adjusted = apply_process_deltas(scenario, itil_frm, cost_rb)
        assert adjusted == {
            "InterruptTime": 700, "ResponseTime": 700,
            "ProcessOrientation": 50, "AuthorizedChanges": 40,
        }

    def test_empty_process_set_is_identity(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(COVERED_BASELINE, (), default_table)
        assert apply_process_deltas(scenario, itil_frm, cost_rb) == COVERED_BASELINE

    def test_overshoot_clamps_to_range(self, itil_frm, cost_rb):
        table = EffectTable.from_mapping(
            "big", {"ChangeMgmt": {"AuthorizedChanges": 40.0}}, "itil")
        scenario = Scenario.create(
            {**COVERED_BASELINE, "AuthorizedChanges": 90}, ("ChangeMgmt",), table)
        adjusted = apply_process_deltas(scenario, itil_frm, cost_rb)
        assert adjusted["AuthorizedChanges"] == 100.0

    def test_multiple_processes_sum_before_clamping(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(
            {**COVERED_BASELINE, "InterruptTime": 900, "ResponseTime": 900},
            ("IncidentMgmt", "ProblemMgmt"),
            default_table,
        )
        adjusted = apply_process_deltas(scenario, itil_frm, cost_rb)
        assert adjusted["InterruptTime"] == 540.0   # 900 - 180 - 180
        assert adjusted["ResponseTime"] == 540.0


class TestValidation:
    def test_unknown_process(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(COVERED_BASELINE, ("Foo",), default_table)
        with pytest.raises(UnknownNameError, match="Foo"):
            validate_scenario(scenario, itil_frm, cost_rb)

    def test_out_of_range_baseline(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(
            {**COVERED_BASELINE, "InterruptTime": 2000}, (), default_table)
        with pytest.raises(ValueError, match="outside range"):
            validate_scenario(scenario, itil_frm, cost_rb)

    def test_missing_baseline_metric(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create({"InterruptTime": 0}, (), default_table)
        with pytest.raises(UnknownNameError):
            validate_scenario(scenario, itil_frm, cost_rb)

    def test_delta_against_relation_sign(self, itil_frm, cost_rb):
        table = EffectTable.from_mapping(
            "bad", {"ChangeMgmt": {"AuthorizedChanges": -10.0}}, "itil")
        scenario = Scenario.create(COVERED_BASELINE, ("ChangeMgmt",), table)
        with pytest.raises(SignConflictError, match="contradicts"):
            validate_scenario(scenario, itil_frm, cost_rb)

    def test_delta_on_zero_relation_cell(self, itil_frm, cost_rb):
        table = EffectTable.from_mapping(
            "bad", {"ChangeMgmt": {"InterruptTime": -60.0}}, "itil")
        scenario = Scenario.create(COVERED_BASELINE, ("ChangeMgmt",), table)
        with pytest.raises(SignConflictError, match="no supporting relation"):
            validate_scenario(scenario, itil_frm, cost_rb)


class TestCompare:
    def test_empty_set_gives_zero_delta_and_identical_firing(
        self, itil_frm, cost_rb, default_table
    ):
        scenario = Scenario.create(COVERED_BASELINE, (), default_table)
        report = compare(scenario, itil_frm, cost_rb)
        assert report.cost_delta == 0.0
        assert report.as_is.prediction.fired_rules == report.to_be.prediction.fired_rules
        assert report.applied_effects == ()

    def test_change_management_lowers_cost(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(COVERED_BASELINE, ("ChangeMgmt",), default_table)
        report = compare(scenario, itil_frm, cost_rb)
        assert report.cost_delta is not None
        assert report.cost_delta <= 0
        assert report.as_is.prediction.crisp == pytest.approx(50.0)
        assert report.to_be.prediction.crisp == pytest.approx(25.0)
        assert report.applied_effects == (
            ("ChangeMgmt", "AuthorizedChanges", 25.0),
            ("ChangeMgmt", "ProcessOrientation", 25.0),
        )

    def test_saturated_baseline_cannot_improve(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(
            BEST_BASELINE, ("IncidentMgmt", "ChangeMgmt"), default_table)
        report = compare(scenario, itil_frm, cost_rb)
        assert report.adjusted == BEST_BASELINE
        assert report.cost_delta == 0.0

    def test_uncovered_side_is_reported_not_raised(self, itil_frm, cost_rb, default_table):
        gap = {"InterruptTime": 0, "ResponseTime": 1440,
               "ProcessOrientation": 50, "AuthorizedChanges": 50}
        scenario = Scenario.create(gap, (), default_table)
        report = compare(scenario, itil_frm, cost_rb)
        assert report.as_is.status == "no_rule_fired"
        assert report.to_be.status == "no_rule_fired"
        assert report.cost_delta is None
        assert report.as_is.fuzzified is not None

    def test_applied_effects_trace_to_nonzero_cells(self, itil_frm, cost_rb, default_table):
        scenario = Scenario.create(
            COVERED_BASELINE, ("IncidentMgmt", "ServiceDesk"), default_table)
        report = compare(scenario, itil_frm, cost_rb)
        for process, metric, _ in report.applied_effects:
            assert itil_frm.cell(process, metric) != 0.0
            assert process in scenario.processes


class TestSweep:
    def test_all_subsets_present_with_identity_row(self, itil_frm, cost_rb, default_table):
        rows = sweep(COVERED_BASELINE, itil_frm, cost_rb, default_table)
        assert len(rows) == 32
        subsets = {row.processes for row in rows}
        assert () in subsets
        identity = next(row for row in rows if row.processes == ())
        assert identity.report.cost_delta == 0.0

    def test_rows_are_deterministically_ordered(self, itil_frm, cost_rb, default_table):
        first = sweep(COVERED_BASELINE, itil_frm, cost_rb, default_table)
        second = sweep(COVERED_BASELINE, itil_frm, cost_rb, default_table)
        assert [r.processes for r in first] == [r.processes for r in second]
        deltas = [r.report.cost_delta for r in first if r.report.cost_delta is not None]
        assert deltas == sorted(deltas)

    def test_covered_rows_never_beat_nothing_by_getting_worse(
        self, itil_frm, cost_rb, default_table
    ):
        # with sign-consistent deltas, no subset should cost more than as-is
        # when both sides stay inside one diagonal regime of the rule table
        rows = sweep(COVERED_BASELINE, itil_frm, cost_rb, default_table)
        for row in rows:
            if row.report.cost_delta is not None:
                assert row.report.cost_delta <= 1e-9, row.processes
