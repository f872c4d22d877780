"""Mamdani-style fuzzy inference for crisp metric vectors.

The pipeline is fuzzification of each crisp input against a five-term
linguistic partition, AND-by-min rule evaluation (the rule's degree of
support), consequent clipping at that degree, max aggregation across
rules, and discrete centroid defuzzification over the output range.

The canonical partition puts five uniformly spaced terms on each range:
interior terms are symmetric triangles with apexes at 25/50/75 % of the
range and base width 50 % of it; the boundary terms are shoulder
trapezoids that saturate over the outer eighth of the range and ramp
out over the next eighth. Interior neighbors cross at membership 0.5,
every point of the range is covered, and the shoulder plateaus keep the
crisp output steady where two same-consequent rules hand over to each
other near a range boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import EmptyOutputError, NoRuleFiredError, UnknownNameError

TERM_NAMES = ("TooLittle", "Little", "Normal", "Much", "TooMuch")

# Accepted spellings for term names as they appear in rule text.
TERM_ALIASES = {
    "toolittle": "TooLittle",
    "too little": "TooLittle",
    "little": "Little",
    "normal": "Normal",
    "usual": "Normal",
    "much": "Much",
    "toomuch": "TooMuch",
    "too much": "TooMuch",
    "very much": "TooMuch",
    "verymuch": "TooMuch",
}

# Unit-interval rate for each term, used when converting linguistic edge
# labels on a causal map into numeric weights (e.g. "much" -> 0.7). This
# scale does not parameterize the membership functions below.
EDGE_WEIGHT_SCALE = {
    "TooLittle": 0.1,
    "Little": 0.3,
    "Normal": 0.5,
    "Much": 0.7,
    "TooMuch": 0.9,
}

TRIANGLE = "triangle"
TRAPEZOID = "trapezoid"


def normalize_term(name: str) -> str:
    """Map a free-spelled term name to its canonical form."""
    if name in TERM_NAMES:
        return name
    key = name.strip().lower()
    if key in TERM_ALIASES:
        return TERM_ALIASES[key]
    raise UnknownNameError("term", name, TERM_NAMES)


@dataclass(frozen=True)
class MembershipFunction:
    """Piecewise-linear membership: triangular (a, b, c) or trapezoidal
    (a, b, c, d) with non-decreasing breakpoints."""

    shape: str
    points: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(p) for p in self.points))
        expected = {TRIANGLE: 3, TRAPEZOID: 4}.get(self.shape)
        if expected is None:
            raise ValueError(f"unknown membership shape {self.shape!r}")
        if len(self.points) != expected:
            raise ValueError(f"{self.shape} needs {expected} breakpoints, got {len(self.points)}")
        if any(p > q for p, q in zip(self.points, self.points[1:])):
            raise ValueError(f"breakpoints must be non-decreasing, got {self.points}")

    def _abcd(self) -> tuple[float, float, float, float]:
        if self.shape == TRIANGLE:
            a, b, c = self.points
            return a, b, b, c
        return self.points  # type: ignore[return-value]

    @property
    def center(self) -> float:
        """Most typical abscissa: the apex or plateau midpoint, except
        that a shoulder answers with its saturated endpoint."""
        a, b, c, d = self._abcd()
        if a == b:
            return a
        if c == d:
            return d
        return (b + c) / 2.0

    def __call__(self, x: float) -> float:
        a, b, c, d = self._abcd()
        if x < a or x > d:
            return 0.0
        if b <= x <= c:
            return 1.0
        if x < b:
            return (x - a) / (b - a)
        return (d - x) / (d - c)

    def evaluate(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized membership over a sample grid."""
        a, b, c, d = self._abcd()
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        if b > a:
            rising = (xs >= a) & (xs < b)
            out[rising] = (xs[rising] - a) / (b - a)
        plateau = (xs >= b) & (xs <= c)
        out[plateau] = 1.0
        if d > c:
            falling = (xs > c) & (xs <= d)
            out[falling] = (d - xs[falling]) / (d - c)
        return out

    def validate(self, lo: float, hi: float) -> list[str]:
        problems = []
        if self.points[0] < lo or self.points[-1] > hi:
            problems.append(f"breakpoints {self.points} outside range [{lo}, {hi}]")
        return problems


@dataclass(frozen=True)
class LinguisticVariable:
    """A named crisp range partitioned into overlapping fuzzy terms."""

    name: str
    bounds: tuple[float, float]
    terms: tuple[tuple[str, MembershipFunction], ...]
    unit: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bounds", (float(self.bounds[0]), float(self.bounds[1])))
        object.__setattr__(self, "terms", tuple((n, mf) for n, mf in self.terms))

    @classmethod
    def five_term(cls, name: str, lo: float, hi: float, unit: str = "") -> "LinguisticVariable":
        """The canonical five-term partition over [lo, hi]."""
        q = (hi - lo) / 4.0
        terms = (
            ("TooLittle", MembershipFunction(TRAPEZOID, (lo, lo, lo + q / 2, lo + q))),
            ("Little", MembershipFunction(TRIANGLE, (lo, lo + q, lo + 2 * q))),
            ("Normal", MembershipFunction(TRIANGLE, (lo + q, lo + 2 * q, lo + 3 * q))),
            ("Much", MembershipFunction(TRIANGLE, (lo + 2 * q, lo + 3 * q, hi))),
            ("TooMuch", MembershipFunction(TRAPEZOID, (hi - q, hi - q / 2, hi, hi))),
        )
        return cls(name, (lo, hi), terms, unit)

    @property
    def term_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.terms)

    def membership(self, term: str) -> MembershipFunction:
        for n, mf in self.terms:
            if n == term:
                return mf
        raise UnknownNameError("term", term, self.term_names)

    def center_of(self, term: str) -> float:
        return self.membership(term).center

    def clamp(self, x: float) -> float:
        lo, hi = self.bounds
        return min(max(float(x), lo), hi)

    def validate(self) -> list[str]:
        problems = []
        lo, hi = self.bounds
        if not lo < hi:
            problems.append(f"variable {self.name!r}: empty range [{lo}, {hi}]")
            return problems
        names = [n for n, _ in self.terms]
        if len(set(names)) != len(names):
            problems.append(f"variable {self.name!r}: duplicate term names")
        for n, mf in self.terms:
            for p in mf.validate(lo, hi):
                problems.append(f"variable {self.name!r}, term {n!r}: {p}")
        # coverage: some term must be active everywhere on the range
        grid = np.linspace(lo, hi, 1001)
        total = np.zeros_like(grid)
        for _, mf in self.terms:
            total = np.maximum(total, mf.evaluate(grid))
        if bool((total <= 0.0).any()):
            gap = grid[int(np.argmax(total <= 0.0))]
            problems.append(f"variable {self.name!r}: no term covers x = {gap}")
        return problems


def fuzzify(variable: LinguisticVariable, x: float) -> dict[str, float]:
    """Membership degree of ``x`` in every term (zeros included).

    Values outside the range are clamped to the nearer boundary first;
    use ``variable.clamp`` to detect that case.
    """
    x = variable.clamp(x)
    return {name: mf(x) for name, mf in variable.terms}


@dataclass(frozen=True)
class FuzzyRule:
    """AND-conjoined antecedent terms implying one output term."""

    antecedent: tuple[tuple[str, str], ...]
    consequent: tuple[str, str]

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple((v, t) for v, t in self.antecedent))
        object.__setattr__(self, "consequent", (self.consequent[0], self.consequent[1]))
        if not self.antecedent:
            raise ValueError("rule antecedent must not be empty")

    @property
    def antecedent_map(self) -> dict[str, str]:
        return dict(self.antecedent)

    def describe(self) -> str:
        parts = " and ".join(f"{v} is {t}" for v, t in self.antecedent)
        return f"IF {parts} THEN {self.consequent[0]} is {self.consequent[1]}"


def rule_dos(rule: FuzzyRule, fuzzified: Mapping[str, Mapping[str, float]]) -> float:
    """Degree of support: the minimum antecedent term degree."""
    degrees = []
    for var, term in rule.antecedent:
        if var not in fuzzified:
            raise UnknownNameError("variable", var, tuple(fuzzified))
        degrees.append(fuzzified[var].get(term, 0.0))
    return min(degrees)


@dataclass(frozen=True)
class RuleBase:
    """Input/output linguistic variables plus the rule list."""

    name: str
    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[FuzzyRule, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.inputs)

    def input_variable(self, name: str) -> LinguisticVariable:
        for v in self.inputs:
            if v.name == name:
                return v
        raise UnknownNameError("variable", name, self.input_names)

    def validate(self) -> list[str]:
        problems = []
        declared = {v.name: v for v in self.inputs}
        for i, rule in enumerate(self.rules):
            for var, term in rule.antecedent:
                if var not in declared:
                    problems.append(f"rule {i}: unknown input variable {var!r}")
                elif term not in declared[var].term_names:
                    problems.append(f"rule {i}: unknown term {term!r} for variable {var!r}")
            out_var, out_term = rule.consequent
            if out_var != self.output.name:
                problems.append(f"rule {i}: consequent variable {out_var!r} is not {self.output.name!r}")
            elif out_term not in self.output.term_names:
                problems.append(f"rule {i}: unknown output term {out_term!r}")
        by_antecedent: dict[tuple, tuple[int, str]] = {}
        for i, rule in enumerate(self.rules):
            key = tuple(sorted(rule.antecedent))
            if key in by_antecedent and by_antecedent[key][1] != rule.consequent[1]:
                problems.append(
                    f"rule {i}: duplicate antecedent of rule {by_antecedent[key][0]} "
                    f"with conflicting consequent"
                )
            by_antecedent.setdefault(key, (i, rule.consequent[1]))
        return problems

    def fuzzify_inputs(self, crisp: Mapping[str, float]) -> tuple[dict[str, dict[str, float]], tuple[str, ...]]:
        """Fuzzify every declared input; returns (degrees, clamped names)."""
        fuzzified = {}
        clamped = []
        for var in self.inputs:
            if var.name not in crisp:
                raise UnknownNameError("variable", var.name, tuple(crisp))
            x = float(crisp[var.name])
            if var.clamp(x) != x:
                clamped.append(var.name)
            fuzzified[var.name] = fuzzify(var, x)
        return fuzzified, tuple(clamped)


@dataclass(frozen=True)
class AggregatedOutput:
    """Max-envelope of the clipped consequent terms of the fired rules."""

    variable: LinguisticVariable
    term_heights: tuple[tuple[str, float], ...]

    @property
    def heights(self) -> dict[str, float]:
        return dict(self.term_heights)

    def membership(self, x: float) -> float:
        return max(
            min(h, self.variable.membership(t)(x)) for t, h in self.term_heights
        )

    def evaluate(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        for term, height in self.term_heights:
            if height > 0.0:
                mf = self.variable.membership(term)
                out = np.maximum(out, np.minimum(height, mf.evaluate(xs)))
        return out


@dataclass(frozen=True)
class InferenceResult:
    aggregate: AggregatedOutput
    fired_rules: tuple[tuple[int, float], ...]
    fuzzified: dict[str, dict[str, float]]
    clamped_inputs: tuple[str, ...]


def infer(rb: RuleBase, inputs: Mapping[str, float]) -> InferenceResult:
    """Fuzzify, evaluate every rule, and aggregate the clipped consequents.

    Raises NoRuleFiredError (with the fuzzified degrees attached) when
    every rule's degree of support is zero; a sparse rule base makes
    that a defined outcome rather than a crash.
    """
    fuzzified, clamped = rb.fuzzify_inputs(inputs)
    fired = []
    heights = {t: 0.0 for t in rb.output.term_names}
    for i, rule in enumerate(rb.rules):
        dos = rule_dos(rule, fuzzified)
        if dos > 0.0:
            fired.append((i, dos))
            term = rule.consequent[1]
            heights[term] = max(heights[term], dos)
    if not fired:
        raise NoRuleFiredError(fuzzified)
    aggregate = AggregatedOutput(rb.output, tuple(heights.items()))
    return InferenceResult(aggregate, tuple(fired), fuzzified, clamped)


def defuzzify_centroid(aggregate: AggregatedOutput, resolution: int = 101) -> float:
    """Discrete centroid over a uniform grid spanning the output range.

    The grid includes both endpoints, so the result is deterministic for
    a fixed resolution.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    lo, hi = aggregate.variable.bounds
    xs = np.linspace(lo, hi, resolution)
    mu = aggregate.evaluate(xs)
    total = float(np.sum(mu))
    if total == 0.0:
        raise EmptyOutputError("aggregated output is identically zero on the grid")
    return float(np.dot(xs, mu) / total)


@dataclass(frozen=True)
class CostPrediction:
    """Crisp output of one inference run plus its full explanation."""

    crisp: float
    fired_rules: tuple[tuple[int, float], ...]
    output_memberships: tuple[tuple[str, float], ...]
    defuzz_resolution: int
    clamped_inputs: tuple[str, ...] = ()

    @property
    def memberships(self) -> dict[str, float]:
        return dict(self.output_memberships)


def predict_cost(
    rb: RuleBase,
    metrics: Mapping[str, float],
    resolution: int = 101,
) -> CostPrediction:
    """Full pipeline: fuzzify, infer, defuzzify.

    Out-of-range metric values are clamped to the range boundary and
    recorded in ``clamped_inputs`` instead of erroring.
    """
    result = infer(rb, metrics)
    crisp = defuzzify_centroid(result.aggregate, resolution)
    return CostPrediction(
        crisp=crisp,
        fired_rules=result.fired_rules,
        output_memberships=result.aggregate.term_heights,
        defuzz_resolution=resolution,
        clamped_inputs=result.clamped_inputs,
    )
