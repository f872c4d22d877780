from __future__ import annotations

import pytest

from fcmgap.builtins import itil_model


@pytest.fixture(scope="session")
def itil_doc():
    return itil_model()


@pytest.fixture(scope="session")
def binary_fcm(itil_doc):
    return itil_doc.fcms["binary"]


@pytest.fixture(scope="session")
def weighted_fcm(itil_doc):
    return itil_doc.fcms["weighted"]


@pytest.fixture(scope="session")
def cost_rb(itil_doc):
    return itil_doc.rule_bases["cost"]


@pytest.fixture(scope="session")
def itil_frm(itil_doc):
    return itil_doc.frms["itil"]


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        print(f"\n[acceptance] {status}: {name}")
