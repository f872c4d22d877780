"""Fuzzy relational maps: signed relations between two disjoint node sets.

Unlike a causal map, which relates concepts within one set, a relational
map pairs a domain set (here: IT service-support processes) with a range
set (the metrics those processes move). Projection of a domain
activation through the relation yields a signed effect per range node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, UnknownNameError

INCREASE = "increase"
DECREASE = "decrease"
NONE = "none"


def _direction(value: float) -> str:
    if value > 0:
        return INCREASE
    if value < 0:
        return DECREASE
    return NONE


@dataclass(frozen=True, eq=False)
class Frm:
    """Bipartite signed relation; rows = domain nodes, columns = range nodes."""

    domain_nodes: tuple[str, ...]
    range_nodes: tuple[str, ...]
    relation: np.ndarray

    def __init__(self, domain_nodes: Iterable[str], range_nodes: Iterable[str], relation):
        object.__setattr__(self, "domain_nodes", tuple(domain_nodes))
        object.__setattr__(self, "range_nodes", tuple(range_nodes))
        matrix = np.array(relation, dtype=float)
        matrix.setflags(write=False)
        object.__setattr__(self, "relation", matrix)
        problems = self.validate()
        if problems:
            raise ValueError("; ".join(problems))

    def validate(self) -> list[str]:
        problems = []
        shared = set(self.domain_nodes) & set(self.range_nodes)
        if shared:
            problems.append(f"domain and range share node names: {sorted(shared)}")
        if len(set(self.domain_nodes)) != len(self.domain_nodes):
            problems.append("duplicate domain node names")
        if len(set(self.range_nodes)) != len(self.range_nodes):
            problems.append("duplicate range node names")
        expected = (len(self.domain_nodes), len(self.range_nodes))
        if self.relation.shape != expected:
            problems.append(f"relation shape {self.relation.shape} does not match {expected}")
            return problems
        if self.relation.size and (np.abs(self.relation) > 1.0).any():
            problems.append("relation entries must lie in [-1, 1]")
        return problems

    def domain_index(self, name: str) -> int:
        try:
            return self.domain_nodes.index(name)
        except ValueError:
            raise UnknownNameError("domain node", name, self.domain_nodes) from None

    def range_index(self, name: str) -> int:
        try:
            return self.range_nodes.index(name)
        except ValueError:
            raise UnknownNameError("range node", name, self.range_nodes) from None

    def cell(self, domain: str, range_: str) -> float:
        return float(self.relation[self.domain_index(domain), self.range_index(range_)])

    def domain_activation(self, on: Iterable[str] | Mapping[str, float]) -> np.ndarray:
        """Activation vector from node names (strength 1) or a name->value map."""
        vec = np.zeros(len(self.domain_nodes))
        if isinstance(on, Mapping):
            for name, value in on.items():
                vec[self.domain_index(name)] = float(value)
        else:
            for name in on:
                vec[self.domain_index(name)] = 1.0
        return vec


@dataclass(frozen=True)
class EffectSummary:
    """Signed aggregate effect per range node with a qualitative direction."""

    effects: tuple[tuple[str, float, str], ...]

    def value(self, node: str) -> float:
        for name, v, _ in self.effects:
            if name == node:
                return v
        raise UnknownNameError("range node", node, tuple(n for n, _, _ in self.effects))

    def direction(self, node: str) -> str:
        for name, _, d in self.effects:
            if name == node:
                return d
        raise UnknownNameError("range node", node, tuple(n for n, _, _ in self.effects))

    def as_dict(self) -> dict[str, dict[str, float | str]]:
        return {n: {"value": v, "direction": d} for n, v, d in self.effects}


def project(frm: Frm, domain_activation: Sequence[float]) -> EffectSummary:
    """Project a domain activation through the relation.

    The raw product is clamped to [-1, 1] per range node; the direction
    is the sign of the clamped aggregate.
    """
    vec = np.asarray(domain_activation, dtype=float)
    if vec.shape != (len(frm.domain_nodes),):
        raise DimensionError(
            f"activation length {vec.shape} does not match {len(frm.domain_nodes)} domain nodes"
        )
    raw = vec @ frm.relation
    clamped = np.clip(raw, -1.0, 1.0)
    effects = tuple(
        (node, float(v), _direction(float(v)))
        for node, v in zip(frm.range_nodes, clamped)
    )
    return EffectSummary(effects)


def back_project(frm: Frm, range_activation: Sequence[float]) -> np.ndarray:
    """Transpose projection: which domain nodes move a given range pattern."""
    vec = np.asarray(range_activation, dtype=float)
    if vec.shape != (len(frm.range_nodes),):
        raise DimensionError(
            f"activation length {vec.shape} does not match {len(frm.range_nodes)} range nodes"
        )
    return np.clip(vec @ frm.relation.T, -1.0, 1.0)


ITIL_PROCESSES = (
    "IncidentMgmt",
    "ProblemMgmt",
    "ChangeMgmt",
    "ServiceAssetConfigMgmt",
    "ServiceDesk",
)

ITIL_METRICS = (
    "AuthorizedChanges",
    "ProcessOrientation",
    "Recording",
    "ResponseTime",
    "InterruptTime",
)

# Direction-only defaults (+1 / -1); per-cell magnitudes can be overridden
# in a model file. ServiceDesk is a function rather than a process and no
# stated effect assigns it metric impacts, so its row is zero by default.
_ITIL_RELATION = (
    # Auth  PO  Rec  Resp  Intr
    (1.0, 1.0, 1.0, -1.0, -1.0),   # IncidentMgmt
    (0.0, 1.0, 0.0, -1.0, -1.0),   # ProblemMgmt
    (1.0, 1.0, 0.0, 0.0, 0.0),     # ChangeMgmt
    (1.0, 1.0, 0.0, 0.0, 0.0),     # ServiceAssetConfigMgmt
    (0.0, 0.0, 0.0, 0.0, 0.0),     # ServiceDesk
)


def itil_service_support_frm() -> Frm:
    """The built-in process -> metric relation for IT service support."""
    return Frm(ITIL_PROCESSES, ITIL_METRICS, _ITIL_RELATION)
