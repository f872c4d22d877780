"""Loading, validating, and canonically saving complete model documents.

A model document is a single UTF-8 JSON file with the fixed top-level
keys ``format_version``, ``fcms``, ``variables``, ``rule_bases``,
``frms``, ``effect_tables``, ``settings``. The canonical writer emits
keys in that order, named entries sorted by name, two-space indentation,
LF line endings, a trailing newline, and shortest round-trip float
formatting -- so structurally equal documents are byte-identical.

Loading validates everything (shapes, ranges, cross-references, delta
signs) and reports each problem with its path in the document. In
strict mode unknown fields are rejected; in lenient mode unknown
top-level fields are preserved across a save, and unknown nested fields
are ignored.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidModelError
from .fcm import Fcm, validate_fcm
from .frm import Frm
from .fuzzy import FuzzyRule, LinguisticVariable, MembershipFunction, RuleBase
from .scenario import EffectTable

FORMAT_VERSION = 1

_SETTING_CHOICES = {
    "and_op": ("min",),
    "agg_op": ("max",),
    "implication": ("clip",),
    "defuzz_method": ("centroid",),
}


@dataclass(frozen=True)
class EngineSettings:
    """Inference configuration; only the Mamdani defaults are accepted in
    format version 1, but the fields keep alternates representable."""

    and_op: str = "min"
    agg_op: str = "max"
    implication: str = "clip"
    defuzz_method: str = "centroid"
    defuzz_resolution: int = 101


@dataclass(frozen=True)
class ModelDocument:
    """One self-contained model: maps, variables, rules, relations, deltas."""

    format_version: int = FORMAT_VERSION
    fcms: dict[str, Fcm] = field(default_factory=dict)
    variables: dict[str, LinguisticVariable] = field(default_factory=dict)
    rule_bases: dict[str, RuleBase] = field(default_factory=dict)
    frms: dict[str, Frm] = field(default_factory=dict)
    effect_tables: dict[str, EffectTable] = field(default_factory=dict)
    settings: EngineSettings = field(default_factory=EngineSettings)
    extras: dict = field(default_factory=dict)


def _num(x) -> float:
    # +0.0 folds -0.0 into 0.0 so canonical output is unambiguous
    return float(x) + 0.0


def to_jsonable(doc: ModelDocument) -> dict:
    """Canonical plain-data form of a document (fixed key order)."""
    out: dict = {"format_version": int(doc.format_version)}
    out["fcms"] = [
        {
            "name": name,
            "mode": f.mode,
            "concepts": list(f.concepts),
            "weights": [[_num(w) for w in row] for row in f.weights],
        }
        for name, f in sorted(doc.fcms.items())
    ]
    out["variables"] = [
        {
            "name": name,
            "range": [_num(v.bounds[0]), _num(v.bounds[1])],
            "unit": v.unit,
            "terms": [
                {"name": t, "shape": mf.shape, "points": [_num(p) for p in mf.points]}
                for t, mf in v.terms
            ],
        }
        for name, v in sorted(doc.variables.items())
    ]
    out["rule_bases"] = [
        {
            "name": name,
            "inputs": list(rb.input_names),
            "output": rb.output.name,
            "rules": [
                {
                    "if": {var: term for var, term in rule.antecedent},
                    "then": rule.consequent[1],
                }
                for rule in rb.rules
            ],
        }
        for name, rb in sorted(doc.rule_bases.items())
    ]
    out["frms"] = [
        {
            "name": name,
            "domain": list(f.domain_nodes),
            "range": list(f.range_nodes),
            "relation": [[_num(w) for w in row] for row in f.relation],
        }
        for name, f in sorted(doc.frms.items())
    ]
    out["effect_tables"] = [
        {
            "name": name,
            "frm": t.frm_name,
            "deltas": {
                process: {metric: _num(d) for metric, d in sorted(row)}
                for process, row in sorted(t.deltas)
            },
        }
        for name, t in sorted(doc.effect_tables.items())
    ]
    out["settings"] = {
        "and_op": doc.settings.and_op,
        "agg_op": doc.settings.agg_op,
        "implication": doc.settings.implication,
        "defuzz_method": doc.settings.defuzz_method,
        "defuzz_resolution": int(doc.settings.defuzz_resolution),
    }
    for key in sorted(doc.extras):
        out[key] = doc.extras[key]
    return out


def save_model(doc: ModelDocument) -> bytes:
    """Serialize to canonical bytes; save(load(save(d))) == save(d)."""
    text = json.dumps(to_jsonable(doc), indent=2, ensure_ascii=False, allow_nan=False)
    return (text + "\n").encode("utf-8")


def model_etag(doc: ModelDocument) -> str:
    """Content hash of the canonical serialization."""
    return hashlib.sha256(save_model(doc)).hexdigest()


def documents_equal(a: ModelDocument, b: ModelDocument) -> bool:
    return to_jsonable(a) == to_jsonable(b)


class _Collector:
    """Accumulates located validation errors during a load."""

    def __init__(self):
        self.errors: list[str] = []

    def add(self, path: str, message: str) -> None:
        self.errors.append(f"{path}: {message}")

    def check_keys(self, path: str, obj: dict, known: tuple[str, ...], strict: bool) -> None:
        for key in obj:
            if key not in known:
                if strict:
                    self.add(path, f"unknown field {key!r}")


def _want(obj: dict, key: str, types, path: str, errs: _Collector, default=None):
    if key not in obj:
        if default is not None:
            return default
        errs.add(path, f"missing field {key!r}")
        return None
    value = obj[key]
    if not isinstance(value, types):
        errs.add(f"{path}.{key}", f"expected {getattr(types, '__name__', types)}")
        return None
    return value


def _load_matrix(raw, path: str, errs: _Collector):
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        errs.add(path, "expected a list of rows")
        return None
    for i, row in enumerate(raw):
        for j, w in enumerate(row):
            if not isinstance(w, (int, float)) or isinstance(w, bool):
                errs.add(f"{path}[{i}][{j}]", "expected a number")
                return None
    return [[float(w) for w in row] for row in raw]


def _load_fcms(raw, errs: _Collector, strict: bool) -> dict[str, Fcm]:
    fcms: dict[str, Fcm] = {}
    for i, entry in enumerate(raw):
        path = f"fcms[{i}]"
        if not isinstance(entry, dict):
            errs.add(path, "expected an object")
            continue
        errs.check_keys(path, entry, ("name", "mode", "concepts", "weights"), strict)
        name = _want(entry, "name", str, path, errs)
        mode = _want(entry, "mode", str, path, errs, default="weighted")
        concepts = _want(entry, "concepts", list, path, errs)
        weights = _load_matrix(entry.get("weights", []), f"{path}.weights", errs)
        if name is None or concepts is None or weights is None:
            continue
        if name in fcms:
            errs.add(path, f"duplicate fcm name {name!r}")
            continue
        fcm = Fcm(concepts, weights, mode)
        report = validate_fcm(fcm)
        for violation in report.violations:
            errs.add(path, violation)
        if report.ok:
            fcms[name] = fcm
    return fcms


def _load_variables(raw, errs: _Collector, strict: bool) -> dict[str, LinguisticVariable]:
    variables: dict[str, LinguisticVariable] = {}
    for i, entry in enumerate(raw):
        path = f"variables[{i}]"
        if not isinstance(entry, dict):
            errs.add(path, "expected an object")
            continue
        errs.check_keys(path, entry, ("name", "range", "unit", "terms"), strict)
        name = _want(entry, "name", str, path, errs)
        bounds = _want(entry, "range", list, path, errs)
        unit = _want(entry, "unit", str, path, errs, default="")
        terms_raw = _want(entry, "terms", list, path, errs)
        if name is None or bounds is None or terms_raw is None:
            continue
        if len(bounds) != 2 or not all(isinstance(b, (int, float)) for b in bounds):
            errs.add(f"{path}.range", "expected [lo, hi]")
            continue
        terms = []
        bad = False
        for j, term in enumerate(terms_raw):
            tpath = f"{path}.terms[{j}]"
            if not isinstance(term, dict):
                errs.add(tpath, "expected an object")
                bad = True
                continue
            errs.check_keys(tpath, term, ("name", "shape", "points"), strict)
            tname = _want(term, "name", str, tpath, errs)
            shape = _want(term, "shape", str, tpath, errs)
            points = _want(term, "points", list, tpath, errs)
            if tname is None or shape is None or points is None:
                bad = True
                continue
            try:
                terms.append((tname, MembershipFunction(shape, points)))
            except (ValueError, TypeError) as exc:
                errs.add(tpath, str(exc))
                bad = True
        if bad:
            continue
        if name in variables:
            errs.add(path, f"duplicate variable name {name!r}")
            continue
        variable = LinguisticVariable(name, (bounds[0], bounds[1]), tuple(terms), unit)
        problems = variable.validate()
        for p in problems:
            errs.add(path, p)
        if not problems:
            variables[name] = variable
    return variables


def _resolve_term(variable: LinguisticVariable, term: str) -> str | None:
    """Literal term name, or a recognized alias that the variable declares."""
    if term in variable.term_names:
        return term
    from .fuzzy import TERM_ALIASES

    canonical = TERM_ALIASES.get(term.strip().lower())
    if canonical in variable.term_names:
        return canonical
    return None


def _load_rule_bases(
    raw, variables: dict[str, LinguisticVariable], errs: _Collector, strict: bool
) -> dict[str, RuleBase]:
    rule_bases: dict[str, RuleBase] = {}
    for i, entry in enumerate(raw):
        path = f"rule_bases[{i}]"
        if not isinstance(entry, dict):
            errs.add(path, "expected an object")
            continue
        errs.check_keys(path, entry, ("name", "inputs", "output", "rules"), strict)
        name = _want(entry, "name", str, path, errs)
        input_names = _want(entry, "inputs", list, path, errs)
        output_name = _want(entry, "output", str, path, errs)
        rules_raw = _want(entry, "rules", list, path, errs)
        if None in (name, input_names, output_name, rules_raw):
            continue
        inputs = []
        bad = False
        for vname in input_names:
            if vname not in variables:
                errs.add(f"{path}.inputs", f"unknown variable {vname!r}")
                bad = True
            else:
                inputs.append(variables[vname])
        if output_name not in variables:
            errs.add(f"{path}.output", f"unknown variable {output_name!r}")
            bad = True
        if bad:
            continue
        output = variables[output_name]
        rules = []
        for j, rule_raw in enumerate(rules_raw):
            rpath = f"{path}.rules[{j}]"
            if not isinstance(rule_raw, dict):
                errs.add(rpath, "expected an object")
                bad = True
                continue
            errs.check_keys(rpath, rule_raw, ("if", "then"), strict)
            antecedent_raw = _want(rule_raw, "if", dict, rpath, errs)
            then_raw = _want(rule_raw, "then", str, rpath, errs)
            if antecedent_raw is None or then_raw is None:
                bad = True
                continue
            antecedent = []
            for var, term in antecedent_raw.items():
                if var not in {v.name for v in inputs}:
                    errs.add(rpath, f"unknown input variable {var!r}")
                    bad = True
                    continue
                resolved = _resolve_term(variables[var], str(term))
                if resolved is None:
                    errs.add(rpath, f"unknown term {term!r} for variable {var!r}")
                    bad = True
                    continue
                antecedent.append((var, resolved))
            out_term = _resolve_term(output, then_raw)
            if out_term is None:
                errs.add(rpath, f"unknown output term {then_raw!r}")
                bad = True
            if bad:
                continue
            # keep antecedent in declared input order for canonical output
            order = {v.name: k for k, v in enumerate(inputs)}
            antecedent.sort(key=lambda pair: order[pair[0]])
            rules.append(FuzzyRule(tuple(antecedent), (output_name, out_term)))
        if bad:
            continue
        if name in rule_bases:
            errs.add(path, f"duplicate rule base name {name!r}")
            continue
        rb = RuleBase(name, tuple(inputs), output, tuple(rules))
        problems = rb.validate()
        for p in problems:
            errs.add(path, p)
        if not problems:
            rule_bases[name] = rb
    return rule_bases


def _load_frms(raw, errs: _Collector, strict: bool) -> dict[str, Frm]:
    frms: dict[str, Frm] = {}
    for i, entry in enumerate(raw):
        path = f"frms[{i}]"
        if not isinstance(entry, dict):
            errs.add(path, "expected an object")
            continue
        errs.check_keys(path, entry, ("name", "domain", "range", "relation"), strict)
        name = _want(entry, "name", str, path, errs)
        domain = _want(entry, "domain", list, path, errs)
        range_ = _want(entry, "range", list, path, errs)
        relation = _load_matrix(entry.get("relation", []), f"{path}.relation", errs)
        if None in (name, domain, range_, relation):
            continue
        if name in frms:
            errs.add(path, f"duplicate frm name {name!r}")
            continue
        try:
            frms[name] = Frm(domain, range_, relation)
        except ValueError as exc:
            errs.add(path, str(exc))
    return frms


def _load_effect_tables(
    raw, frms: dict[str, Frm], errs: _Collector, strict: bool
) -> dict[str, EffectTable]:
    tables: dict[str, EffectTable] = {}
    for i, entry in enumerate(raw):
        path = f"effect_tables[{i}]"
        if not isinstance(entry, dict):
            errs.add(path, "expected an object")
            continue
        errs.check_keys(path, entry, ("name", "frm", "deltas"), strict)
        name = _want(entry, "name", str, path, errs)
        frm_name = _want(entry, "frm", str, path, errs)
        deltas_raw = _want(entry, "deltas", dict, path, errs)
        if None in (name, frm_name, deltas_raw):
            continue
        frm = frms.get(frm_name)
        if frm is None:
            errs.add(f"{path}.frm", f"unknown frm {frm_name!r}")
            continue
        bad = False
        deltas: dict[str, dict[str, float]] = {}
        for process, row in deltas_raw.items():
            if process not in frm.domain_nodes:
                errs.add(f"{path}.deltas", f"unknown process {process!r}")
                bad = True
                continue
            if not isinstance(row, dict):
                errs.add(f"{path}.deltas.{process}", "expected an object")
                bad = True
                continue
            deltas[process] = {}
            for metric, d in row.items():
                dpath = f"{path}.deltas.{process}.{metric}"
                if metric not in frm.range_nodes:
                    errs.add(dpath, f"unknown metric {metric!r}")
                    bad = True
                    continue
                if not isinstance(d, (int, float)) or isinstance(d, bool):
                    errs.add(dpath, "expected a number")
                    bad = True
                    continue
                relation = frm.cell(process, metric)
                if d and not relation:
                    errs.add(dpath, "delta has no supporting relation cell")
                    bad = True
                elif d and (d > 0) != (relation > 0):
                    errs.add(dpath, f"delta sign contradicts relation sign {relation:+g}")
                    bad = True
                else:
                    deltas[process][metric] = float(d)
        if bad:
            continue
        if name in tables:
            errs.add(path, f"duplicate effect table name {name!r}")
            continue
        tables[name] = EffectTable.from_mapping(name, deltas, frm_name)
    return tables


def _load_settings(raw, errs: _Collector, strict: bool) -> EngineSettings:
    path = "settings"
    if not isinstance(raw, dict):
        errs.add(path, "expected an object")
        return EngineSettings()
    known = ("and_op", "agg_op", "implication", "defuzz_method", "defuzz_resolution")
    errs.check_keys(path, raw, known, strict)
    values = {}
    for key, choices in _SETTING_CHOICES.items():
        value = raw.get(key, choices[0])
        if value not in choices:
            errs.add(f"{path}.{key}", f"unsupported value {value!r} (supported: {choices})")
        else:
            values[key] = value
    resolution = raw.get("defuzz_resolution", 101)
    if not isinstance(resolution, int) or isinstance(resolution, bool) or resolution < 2:
        errs.add(f"{path}.defuzz_resolution", "expected an integer >= 2")
    else:
        values["defuzz_resolution"] = resolution
    return EngineSettings(**values)


_TOP_KEYS = (
    "format_version",
    "fcms",
    "variables",
    "rule_bases",
    "frms",
    "effect_tables",
    "settings",
)


def load_model(data: bytes | str, strict: bool = True) -> ModelDocument:
    """Parse and fully validate a model document.

    Raises InvalidModelError whose ``errors`` list each problem with its
    path; a syntax error reports the line and column from the parser.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    errs = _Collector()
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InvalidModelError([f"syntax error: {exc}"]) from None
    if not isinstance(raw, dict):
        raise InvalidModelError(["top level: expected an object"])

    extras = {}
    for key in raw:
        if key not in _TOP_KEYS:
            if strict:
                errs.add("top level", f"unknown field {key!r}")
            else:
                extras[key] = raw[key]

    version = raw.get("format_version")
    if not isinstance(version, int) or isinstance(version, bool):
        errs.add("format_version", "expected an integer")
        version = FORMAT_VERSION
    elif version > FORMAT_VERSION:
        errs.add("format_version", f"version {version} unsupported (reader supports {FORMAT_VERSION})")

    def section(key):
        value = raw.get(key, [])
        if not isinstance(value, list):
            errs.add(key, "expected a list")
            return []
        return value

    fcms = _load_fcms(section("fcms"), errs, strict)
    variables = _load_variables(section("variables"), errs, strict)
    rule_bases = _load_rule_bases(section("rule_bases"), variables, errs, strict)
    frms = _load_frms(section("frms"), errs, strict)
    effect_tables = _load_effect_tables(section("effect_tables"), frms, errs, strict)
    settings = _load_settings(raw.get("settings", {}), errs, strict)

    if errs.errors:
        raise InvalidModelError(errs.errors)
    return ModelDocument(
        format_version=version,
        fcms=fcms,
        variables=variables,
        rule_bases=rule_bases,
        frms=frms,
        effect_tables=effect_tables,
        settings=settings,
        extras=extras,
    )


def builtin_models() -> dict[str, ModelDocument]:
    """The bundled documents, keyed by model name."""
    from . import builtins as _builtins

    return _builtins.build_all()


def resolve_model(spec: str | Path) -> ModelDocument:
    """Load a model from a filesystem path or a bundled model name."""
    path = Path(spec)
    if path.exists():
        return load_model(path.read_bytes())
    models = builtin_models()
    if str(spec) in models:
        return models[str(spec)]
    raise FileNotFoundError(
        f"{spec!r} is neither a readable file nor a bundled model "
        f"(bundled: {', '.join(sorted(models))})"
    )
