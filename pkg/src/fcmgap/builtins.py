"""Bundled models: the ITIL service-support pipeline plus two samples.

Run ``python -m fcmgap.builtins`` to regenerate the canonical model
files under ``fcmgap/models/``; a test pins the shipped files to these
builders so they cannot drift.
"""

from __future__ import annotations

from .fcm import BINARY, WEIGHTED, Fcm
from .frm import Frm, itil_service_support_frm
from .fuzzy import FuzzyRule, LinguisticVariable, RuleBase
from .scenario import default_effect_table
from .store import EngineSettings, ModelDocument

ITIL_MODEL = "itil-service-support"
TEACHING_MODEL = "teaching-frm"
SOCIO_MODEL = "socio-economic-fcm"

FCM_CONCEPTS = (
    "ResponseTime",
    "Cost",
    "Interrupt",
    "ProcessOriented",
    "Recording",
    "Authorization",
)

# Binary causal structure among the service-support goals.
BINARY_WEIGHTS = (
    (0, 1, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (-1, -1, -1, 0, 0, 1),
    (-1, 0, 0, 0, 0, 0),
    (0, -1, 0, 0, 1, 0),
)

# Same structure with expert-rated edge strengths.
WEIGHTED_WEIGHTS = (
    (0, 0.7, 0.9, 0, 0, 0),
    (0, 0, 0, 0, 0, 0),
    (0, 0.7, 0, 0, 0, 0),
    (-0.5, -0.5, -0.3, 0, 0, 0.7),
    (-0.1, 0, 0, 0, 0, 0),
    (0, 0.7, 0, 0, 0.5, 0),
)

# The eight experimental cost rules; antecedent order is
# (InterruptTime, ResponseTime, ProcessOrientation, AuthorizedChanges).
COST_RULES = (
    (("Little", "Little", "Normal", "Much"), "Little"),
    (("Much", "Much", "Little", "Little"), "Much"),
    (("Normal", "Normal", "Much", "Normal"), "Normal"),
    (("Normal", "Normal", "Little", "Normal"), "Normal"),
    (("TooLittle", "TooLittle", "Much", "TooMuch"), "TooLittle"),
    (("TooLittle", "TooLittle", "TooMuch", "TooMuch"), "TooLittle"),
    (("TooMuch", "TooMuch", "Little", "TooLittle"), "TooMuch"),
    (("TooMuch", "TooMuch", "TooLittle", "TooLittle"), "TooMuch"),
)

METRIC_INPUT_ORDER = (
    "InterruptTime",
    "ResponseTime",
    "ProcessOrientation",
    "AuthorizedChanges",
)


def cost_variables() -> dict[str, LinguisticVariable]:
    return {
        v.name: v
        for v in (
            LinguisticVariable.five_term("AuthorizedChanges", 0, 100, "% of changes"),
            LinguisticVariable.five_term("InterruptTime", 0, 1440, "min/day"),
            LinguisticVariable.five_term("ProcessOrientation", 0, 100, "% of works"),
            LinguisticVariable.five_term("ResponseTime", 0, 1440, "min/day"),
            LinguisticVariable.five_term("Cost", 0, 100, "% of budget"),
        )
    }


def cost_rule_base(variables: dict[str, LinguisticVariable] | None = None) -> RuleBase:
    variables = variables or cost_variables()
    inputs = tuple(variables[name] for name in METRIC_INPUT_ORDER)
    rules = tuple(
        FuzzyRule(tuple(zip(METRIC_INPUT_ORDER, terms)), ("Cost", consequent))
        for terms, consequent in COST_RULES
    )
    return RuleBase("cost", inputs, variables["Cost"], rules)


def itil_model() -> ModelDocument:
    variables = cost_variables()
    rb = cost_rule_base(variables)
    frm = itil_service_support_frm()
    effects = default_effect_table(frm, rb, frm_name="itil")
    return ModelDocument(
        fcms={
            "binary": Fcm(FCM_CONCEPTS, BINARY_WEIGHTS, BINARY),
            "weighted": Fcm(FCM_CONCEPTS, WEIGHTED_WEIGHTS, WEIGHTED),
        },
        variables=variables,
        rule_bases={"cost": rb},
        frms={"itil": frm},
        effect_tables={"default": effects},
        settings=EngineSettings(),
    )


def teaching_model() -> ModelDocument:
    """Teaching-quality sample relation (illustrative strengths)."""
    frm = Frm(
        (
            "Teaching is good",
            "Teaching is poor",
            "Teaching is mediocre",
            "Teacher is kind",
            "Teacher is harsh",
        ),
        ("Good Student", "Bad Student", "Average Student"),
        (
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (1, 0, 0),
            (0, 1, 0),
        ),
    )
    return ModelDocument(frms={"teaching": frm})


def socio_model() -> ModelDocument:
    """Socio-economic sample map; only the population -> unemployment
    edge is documented, so it ships as a one-edge illustration."""
    concepts = ("Population", "Crime", "EconomicCondition", "Poverty", "Unemployment")
    weights = [[0] * 5 for _ in range(5)]
    weights[0][4] = 1
    return ModelDocument(fcms={"socio": Fcm(concepts, weights, BINARY)})


def build_all() -> dict[str, ModelDocument]:
    return {
        ITIL_MODEL: itil_model(),
        TEACHING_MODEL: teaching_model(),
        SOCIO_MODEL: socio_model(),
    }


def _write_model_files() -> None:
    from pathlib import Path

    from .store import save_model

    out_dir = Path(__file__).parent / "models"
    out_dir.mkdir(exist_ok=True)
    for name, doc in build_all().items():
        path = out_dir / f"{name}.json"
        path.write_bytes(save_model(doc))
        print(f"wrote {path}")


if __name__ == "__main__":
    _write_model_files()
