"""Inference over a sparse rule base: Shepard-style distance weighting in the
vague environment, yielding a continuous degree of abnormality."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .fuzzysets import Partition, Term
from .vague import VagueEnvironment


class Label(enum.Enum):
    NORMAL = "Normal"
    ABNORMAL = "Abnormal"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Rule:
    """Crisp antecedent point (one coordinate per feature) and a consequent
    degree of abnormality in [0, 1]."""

    antecedent: tuple[float, ...]
    consequent: float

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(float(v) for v in self.antecedent))
        object.__setattr__(self, "consequent", float(self.consequent))
        if not 0.0 <= self.consequent <= 1.0:
            raise ValueError(f"consequent {self.consequent} outside [0, 1]")


@dataclass(frozen=True)
class SparseRuleBase:
    rules: tuple[Rule, ...]
    feature_order: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "feature_order", tuple(self.feature_order))
        if not self.rules:
            raise ValueError("rule base must contain at least one rule")
        dim = len(self.feature_order)
        seen = set()
        for r in self.rules:
            if len(r.antecedent) != dim:
                raise ValueError(
                    f"rule antecedent has {len(r.antecedent)} coordinates, expected {dim}"
                )
            if r.antecedent in seen:
                raise ValueError(f"duplicate rule antecedent: {r.antecedent}")
            seen.add(r.antecedent)

    def antecedent_matrix(self) -> np.ndarray:
        return np.array([r.antecedent for r in self.rules], dtype=float)

    def consequent_vector(self) -> np.ndarray:
        return np.array([r.consequent for r in self.rules], dtype=float)


@dataclass(frozen=True)
class InferenceConfig:
    shepard_power: float = 2.0
    exact_hit_epsilon: float = 1e-9
    decision_threshold: float = 0.5

    def __post_init__(self):
        if self.shepard_power <= 0:
            raise ValueError("shepard_power must be positive")
        if self.exact_hit_epsilon <= 0:
            raise ValueError("exact_hit_epsilon must be positive")
        if not 0.0 < self.decision_threshold < 1.0:
            raise ValueError("decision_threshold must lie in (0, 1)")


def shepard_blend(distances: np.ndarray, consequents: np.ndarray,
                  power: float, exact_hit_epsilon: float) -> np.ndarray:
    """Inverse-distance weighted mean per observation row.

    distances: (n, r) vague distances to each rule; rows with any distance
    below exact_hit_epsilon average the consequents of those rules instead.
    Weights are normalized by the row minimum before powering so extreme
    distance ratios cannot underflow.
    """
    d = np.asarray(distances, dtype=float)
    y = np.asarray(consequents, dtype=float)
    squeeze = d.ndim == 1
    if squeeze:
        d = d[None, :]
    dmin = d.min(axis=1, keepdims=True)
    out = np.empty(d.shape[0])

    hit_rows = dmin[:, 0] < exact_hit_epsilon
    if np.any(hit_rows):
        for i in np.flatnonzero(hit_rows):
            out[i] = float(np.mean(y[d[i] < exact_hit_epsilon]))

    rest = ~hit_rows
    if np.any(rest):
        w = (d[rest] / dmin[rest]) ** (-power)
        blended = (w @ y) / w.sum(axis=1)
        out[rest] = np.clip(blended, y.min(), y.max())

    return out[0] if squeeze else out


def infer_batch(rb: SparseRuleBase, env: VagueEnvironment, observations,
                cfg: InferenceConfig = InferenceConfig()) -> np.ndarray:
    """Degrees of abnormality for a (n, k) block of observations."""
    if rb.feature_order != env.feature_order:
        raise ValueError("rule base and environment disagree on feature order")
    obs = np.asarray(observations, dtype=float)
    if obs.ndim != 2 or obs.shape[1] != len(rb.feature_order):
        raise ValueError(
            f"observations must be (n, {len(rb.feature_order)}), got {obs.shape}"
        )
    u_obs = env.transform_points(obs)
    u_rules = env.transform_points(rb.antecedent_matrix())
    diff = u_obs[:, None, :] - u_rules[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=2))
    return shepard_blend(d, rb.consequent_vector(), cfg.shepard_power,
                         cfg.exact_hit_epsilon)


def infer(rb: SparseRuleBase, env: VagueEnvironment, obs: Sequence[float],
          cfg: InferenceConfig = InferenceConfig()) -> float:
    """Degree of abnormality of one observation."""
    obs = np.asarray(obs, dtype=float)
    if obs.ndim != 1:
        raise ValueError("infer takes a single observation vector")
    return float(infer_batch(rb, env, obs[None, :], cfg)[0])


def classify(degree: float, cfg: InferenceConfig = InferenceConfig()) -> Label:
    """Threshold the degree; ties alarm (Abnormal)."""
    if not 0.0 <= degree <= 1.0:
        raise ValueError(f"degree {degree} outside [0, 1]")
    return Label.ABNORMAL if degree >= cfg.decision_threshold else Label.NORMAL


_CONSEQUENT_VALUES = {"normal": 0.0, "abnormal": 1.0}


def compile_linguistic_rules(partitions: dict[str, Partition],
                             rows: Iterable[tuple[Sequence, object]],
                             feature_order: Sequence[str] | None = None,
                             ) -> SparseRuleBase:
    """Turn linguistic rows (one term per feature, consequent label or degree)
    into crisp rules anchored at the named sets' core midpoints. Exact
    duplicate rows collapse; duplicates with conflicting consequents are an
    error."""
    order = tuple(feature_order) if feature_order else tuple(partitions)
    rows = list(rows)
    if not rows:
        raise ValueError("no linguistic rules given")
    compiled: dict[tuple[float, ...], float] = {}
    rules = []
    for row_no, (terms, consequent) in enumerate(rows, start=1):
        terms = list(terms)
        if len(terms) != len(order):
            raise ValueError(f"row {row_no}: expected {len(order)} terms, got {len(terms)}")
        point = []
        for feature, raw_term in zip(order, terms):
            term = raw_term if isinstance(raw_term, Term) else Term.parse(raw_term)
            try:
                s = partitions[feature].set_by_term(term)
            except KeyError:
                raise ValueError(
                    f"row {row_no}: feature {feature!r} has no {term.value} set"
                ) from None
            point.append(s.core_midpoint)
        if isinstance(consequent, str):
            key = consequent.strip().lower()
            if key not in _CONSEQUENT_VALUES:
                raise ValueError(f"row {row_no}: unknown consequent {consequent!r}")
            value = _CONSEQUENT_VALUES[key]
        else:
            value = float(consequent)
        point = tuple(point)
        if point in compiled:
            if compiled[point] != value:
                raise ValueError(f"row {row_no}: conflicting consequent for {point}")
            continue
        compiled[point] = value
        rules.append(Rule(point, value))
    return SparseRuleBase(tuple(rules), order)
