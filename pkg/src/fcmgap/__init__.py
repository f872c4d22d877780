"""Fuzzy cognitive maps, Mamdani cost inference, and gap analysis for
IT service-support planning."""

from .errors import (
    DimensionError,
    EmptyOutputError,
    FcmgapError,
    InvalidModelError,
    NonConvergenceError,
    NoRuleFiredError,
    SignConflictError,
    UnknownNameError,
)
from .fcm import (
    Attractor,
    Fcm,
    StateVector,
    ValidationReport,
    combine_fcms,
    continuous_run,
    continuous_step,
    hidden_pattern,
    threshold_step,
    validate_fcm,
)
from .frm import EffectSummary, Frm, back_project, itil_service_support_frm, project
from .fuzzy import (
    CostPrediction,
    FuzzyRule,
    LinguisticVariable,
    MembershipFunction,
    RuleBase,
    defuzzify_centroid,
    fuzzify,
    infer,
    predict_cost,
    rule_dos,
)
from .scenario import (
    EffectTable,
    GapAnalysisReport,
    Scenario,
    apply_process_deltas,
    compare,
    default_effect_table,
    sweep,
)
from .store import (
    EngineSettings,
    ModelDocument,
    builtin_models,
    documents_equal,
    load_model,
    model_etag,
    resolve_model,
    save_model,
)

__version__ = "0.1.0"

__all__ = [
    "Attractor",
    "CostPrediction",
    "DimensionError",
    "EffectSummary",
    "EffectTable",
    "EngineSettings",
    "EmptyOutputError",
    "Fcm",
    "FcmgapError",
    "Frm",
    "FuzzyRule",
    "GapAnalysisReport",
    "InvalidModelError",
    "LinguisticVariable",
    "MembershipFunction",
    "ModelDocument",
    "NonConvergenceError",
    "NoRuleFiredError",
    "RuleBase",
    "Scenario",
    "SignConflictError",
    "StateVector",
    "UnknownNameError",
    "ValidationReport",
    "apply_process_deltas",
    "back_project",
    "builtin_models",
    "combine_fcms",
    "compare",
    "continuous_run",
    "continuous_step",
    "default_effect_table",
    "defuzzify_centroid",
    "documents_equal",
    "fuzzify",
    "hidden_pattern",
    "infer",
    "itil_service_support_frm",
    "load_model",
    "model_etag",
    "predict_cost",
    "project",
    "resolve_model",
    "rule_dos",
    "save_model",
    "sweep",
    "threshold_step",
    "validate_fcm",
]
