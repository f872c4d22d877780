"""Fuzzy cognitive maps: signed causal digraphs and their state dynamics.

A map is a list of named concepts plus a square weight matrix (row =
cause, column = effect) with entries in [-1, 1]. Binary maps restrict
weights to {-1, 0, 1} and evolve 0/1 activation vectors by thresholded
vector-matrix products until a fixed point or limit cycle appears; that
attractor is the map's hidden pattern for the chosen initial activation.
Weighted maps propagate real activations with [0, 1] saturation, a
documented extension since the source material defines weighted edges
but no squashing function for them.

All values here are immutable and every operation is a pure function,
so concurrent evaluation needs no locking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ConceptMismatchError, DimensionError, NonConvergenceError

BINARY = "binary"
WEIGHTED = "weighted"

FIXED_POINT = "fixed-point"
LIMIT_CYCLE = "limit-cycle"


def _frozen_matrix(weights) -> np.ndarray:
    m = np.array(weights, dtype=float)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class Fcm:
    """A named-concept causal map with a square signed weight matrix."""

    concepts: tuple[str, ...]
    weights: np.ndarray
    mode: str = WEIGHTED

    def __init__(self, concepts: Iterable[str], weights, mode: str = WEIGHTED):
        object.__setattr__(self, "concepts", tuple(concepts))
        object.__setattr__(self, "weights", _frozen_matrix(weights))
        object.__setattr__(self, "mode", mode)

    @property
    def n(self) -> int:
        return len(self.concepts)

    def index_of(self, name: str) -> int:
        try:
            return self.concepts.index(name)
        except ValueError:
            from .errors import UnknownNameError

            raise UnknownNameError("concept", name, self.concepts) from None

    def initial_state(self, on: Iterable[str] = ()) -> "StateVector":
        """Binary state with the named concepts switched on and clamped."""
        idx = {self.index_of(name) for name in on}
        values = tuple(1 if i in idx else 0 for i in range(self.n))
        return StateVector(values, frozenset(idx))

    def structurally_equal(self, other: "Fcm") -> bool:
        return (
            self.concepts == other.concepts
            and self.mode == other.mode
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class StateVector:
    """Per-concept activation plus the set of concept indices held fixed.

    Clamped concepts keep their value from this vector through every
    update step; by convention the initially-on concepts of a hidden
    pattern run are its clamp set.
    """

    values: tuple[float, ...]
    clamped: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "clamped", frozenset(self.clamped))

    def is_binary(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    def on_concepts(self, fcm: Fcm) -> tuple[str, ...]:
        return tuple(c for c, v in zip(fcm.concepts, self.values) if v == 1)


@dataclass(frozen=True)
class Attractor:
    """Trajectory of a hidden-pattern run, ending at the first repeated state.

    ``period`` is 1 for a fixed point, the cycle length otherwise;
    ``iterations`` counts update steps performed.
    """

    kind: str
    trajectory: tuple[StateVector, ...]
    period: int
    iterations: int

    @property
    def final_state(self) -> StateVector:
        return self.trajectory[-1]

    @property
    def cycle(self) -> tuple[StateVector, ...]:
        """The repeating segment (length = period)."""
        return self.trajectory[-self.period - 1 : -1]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of structural validation; empty ``violations`` means valid."""

    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_fcm(fcm: Fcm) -> ValidationReport:
    """Check every structural invariant; reports instead of raising."""
    problems: list[str] = []
    n = len(fcm.concepts)

    seen: set[str] = set()
    for name in fcm.concepts:
        if not name:
            problems.append("empty concept name")
        if name in seen:
            problems.append(f"duplicate concept name {name!r}")
        seen.add(name)

    if fcm.mode not in (BINARY, WEIGHTED):
        problems.append(f"unknown mode {fcm.mode!r}")

    if fcm.weights.ndim != 2 or fcm.weights.shape != (n, n):
        problems.append(
            f"weight matrix shape {fcm.weights.shape} does not match {n} concepts"
        )
        return ValidationReport(tuple(problems))

    for i in range(n):
        for j in range(n):
            w = fcm.weights[i, j]
            if not -1.0 <= w <= 1.0:
                problems.append(
                    f"weight ({fcm.concepts[i]}, {fcm.concepts[j]}) = {w} outside [-1, 1]"
                )
            elif fcm.mode == BINARY and w not in (-1.0, 0.0, 1.0):
                problems.append(
                    f"binary-mode weight ({fcm.concepts[i]}, {fcm.concepts[j]}) = {w} not in {{-1, 0, 1}}"
                )
        if fcm.weights[i, i] != 0.0:
            problems.append(f"nonzero diagonal at {fcm.concepts[i]!r} (self-causation)")

    return ValidationReport(tuple(problems))


def _check_dims(fcm: Fcm, state: StateVector) -> None:
    if len(state.values) != fcm.n:
        raise DimensionError(
            f"state has {len(state.values)} components, map has {fcm.n} concepts"
        )


def threshold_step(fcm: Fcm, state: StateVector) -> StateVector:
    """One synchronous binary update: threshold the row-vector product.

    Component j of the result is 1 when (state . weights)_j > 0, else 0;
    clamped components keep their value from ``state``.
    """
    if fcm.mode != BINARY:
        raise ValueError("threshold_step requires a binary-mode map")
    _check_dims(fcm, state)
    product = np.asarray(state.values, dtype=float) @ fcm.weights
    values = tuple(
        state.values[j] if j in state.clamped else (1 if product[j] > 0 else 0)
        for j in range(fcm.n)
    )
    return StateVector(values, state.clamped)


def hidden_pattern(fcm: Fcm, initial: StateVector, max_iter: int | None = None) -> Attractor:
    """Iterate threshold_step from ``initial`` until a state repeats.

    The default step budget is 2^n + 1, which provably suffices for an
    n-concept binary map; the bound is still enforced for explicit
    budgets so a bad override surfaces as NonConvergenceError.
    """
    if not initial.is_binary():
        raise ValueError("hidden_pattern requires a binary initial state")
    _check_dims(fcm, initial)
    if max_iter is None:
        max_iter = 2 ** fcm.n + 1
    if max_iter < 1:
        raise ValueError("max_iter must be positive")

    seen = {initial.values: 0}
    trajectory = [initial]
    state = initial
    for step in range(1, max_iter + 1):
        state = threshold_step(fcm, state)
        trajectory.append(state)
        if state.values in seen:
            period = step - seen[state.values]
            kind = FIXED_POINT if period == 1 else LIMIT_CYCLE
            return Attractor(kind, tuple(trajectory), period, step)
        seen[state.values] = step
    raise NonConvergenceError(
        f"no repeated state within {max_iter} iterations", max_iter
    )


def continuous_step(fcm: Fcm, state: StateVector) -> StateVector:
    """One linear propagation step with [0, 1] saturation.

    Negative products saturate to 0 and products above 1 to 1, keeping
    activations interpretable as degrees; clamped components keep their
    value from ``state``.
    """
    _check_dims(fcm, state)
    product = np.asarray(state.values, dtype=float) @ fcm.weights
    clipped = np.clip(product, 0.0, 1.0)
    values = tuple(
        state.values[j] if j in state.clamped else float(clipped[j])
        for j in range(fcm.n)
    )
    return StateVector(values, state.clamped)


def continuous_run(
    fcm: Fcm,
    initial: StateVector,
    max_iter: int = 1000,
    tol: float = 1e-9,
) -> Attractor:
    """Iterate continuous_step until the state stops moving or repeats.

    Convergence within ``tol`` (max-norm) counts as a fixed point; an
    exact revisit of an earlier state is reported as a limit cycle.
    """
    _check_dims(fcm, initial)
    seen = {initial.values: 0}
    trajectory = [initial]
    state = initial
    for step in range(1, max_iter + 1):
        nxt = continuous_step(fcm, state)
        trajectory.append(nxt)
        if max(abs(a - b) for a, b in zip(nxt.values, state.values)) <= tol:
            return Attractor(FIXED_POINT, tuple(trajectory), 1, step)
        if nxt.values in seen:
            period = step - seen[nxt.values]
            return Attractor(LIMIT_CYCLE, tuple(trajectory), period, step)
        seen[nxt.values] = step
        state = nxt
    raise NonConvergenceError(f"no convergence within {max_iter} iterations", max_iter)


def combine_fcms(maps: Sequence[Fcm], normalization: str = "clip") -> Fcm:
    """Entrywise sum of several maps over one shared concept list.

    The raw sum can leave [-1, 1]; ``clip`` clamps each entry,
    ``scale`` divides everything by the largest absolute entry when
    that entry exceeds 1 (so a sum of k copies of F scales back to F).
    """
    if not maps:
        raise ConceptMismatchError("cannot combine an empty list of maps")
    if normalization not in ("clip", "scale"):
        raise ValueError(f"normalization must be 'clip' or 'scale', got {normalization!r}")
    concepts = maps[0].concepts
    for m in maps[1:]:
        if m.concepts != concepts:
            raise ConceptMismatchError(
                f"concept lists differ: {concepts} vs {m.concepts}"
            )

    total = np.zeros((len(concepts), len(concepts)))
    for m in maps:
        total = total + m.weights

    if normalization == "clip":
        total = np.clip(total, -1.0, 1.0)
    else:
        peak = np.max(np.abs(total)) if total.size else 0.0
        if peak > 1.0:
            total = total / peak

    binary = all(m.mode == BINARY for m in maps) and bool(
        np.isin(total, (-1.0, 0.0, 1.0)).all()
    )
    return Fcm(concepts, total, BINARY if binary else WEIGHTED)
