"""Sparse rule base generation: seed two extreme rules, hill-climb trapezoid
breakpoints against RMSE, and insert a rule at the worst-error sample whenever
progress stalls."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .engine import InferenceConfig, Rule, SparseRuleBase, infer_batch, shepard_blend
from .fuzzysets import Partition, TrapezoidSet, validate_partition
from .vague import DEFAULT_S_MAX, FeatureScale, VagueEnvironment, derive_scaling


@dataclass(frozen=True)
class TrainingSample:
    features: tuple[float, ...]
    target: float

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(float(v) for v in self.features))
        object.__setattr__(self, "target", float(self.target))
        if self.target not in (0.0, 1.0):
            raise ValueError(f"target must be 0 or 1, got {self.target}")


@dataclass(frozen=True)
class GenerationConfig:
    rng_seed: int
    max_rules: int = 400
    stagnation_window: int = 10
    rmse_target: float = 0.05
    max_iterations: int = 5000
    step_fraction: float = 0.05

    def __post_init__(self):
        if self.max_rules < 2:
            raise ValueError("max_rules must be at least 2")
        if self.stagnation_window < 1:
            raise ValueError("stagnation_window must be at least 1")
        if self.rmse_target < 0:
            raise ValueError("rmse_target must be non-negative")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")
        if not 0.0 < self.step_fraction < 1.0:
            raise ValueError("step_fraction must lie in (0, 1)")


@dataclass(frozen=True)
class GenerationReport:
    iterations_used: int
    rmse_history: tuple[float, ...]
    final_rule_count: int
    terminated_by: str


def rmse(rb: SparseRuleBase, env: VagueEnvironment,
         samples: Sequence[TrainingSample],
         cfg: InferenceConfig = InferenceConfig()) -> float:
    """Root mean squared error of the inferred degrees against sample targets."""
    if not samples:
        raise ValueError("rmse needs at least one sample")
    feats = np.array([s.features for s in samples], dtype=float)
    targets = np.array([s.target for s in samples], dtype=float)
    preds = infer_batch(rb, env, feats, cfg)
    return float(np.sqrt(np.mean((preds - targets) ** 2)))


def max_error_sample(rb: SparseRuleBase, env: VagueEnvironment,
                     samples: Sequence[TrainingSample],
                     cfg: InferenceConfig = InferenceConfig()) -> tuple[int, float]:
    """Index of the sample with the largest |inferred - target|; ties break to
    the lowest index."""
    if not samples:
        raise ValueError("max_error_sample needs at least one sample")
    feats = np.array([s.features for s in samples], dtype=float)
    targets = np.array([s.target for s in samples], dtype=float)
    errors = np.abs(infer_batch(rb, env, feats, cfg) - targets)
    idx = int(np.argmax(errors))
    return idx, float(errors[idx])


class _SearchState:
    """Distance bookkeeping for the optimization loop: raw samples and rule
    antecedents plus their vague coordinates per feature, with squared
    per-feature differences cached so a single-feature perturbation is cheap."""

    def __init__(self, feats: np.ndarray, partitions: dict[str, Partition],
                 s_max: float):
        self.feats = feats
        self.features = tuple(partitions)
        self.partitions = dict(partitions)
        self.scales = {f: FeatureScale(derive_scaling(p, s_max))
                       for f, p in partitions.items()}
        self.s_max = s_max
        self.u_samples = np.column_stack([
            self.scales[f].transform(feats[:, i])
            for i, f in enumerate(self.features)
        ])
        self.antecedents = np.empty((0, len(self.features)))
        self.u_rules = np.empty((0, len(self.features)))
        self.consequents = np.empty(0)
        self.sq = [np.empty((len(feats), 0)) for _ in self.features]

    def add_rule(self, antecedent: np.ndarray, consequent: float):
        u = np.array([self.scales[f].transform(antecedent[i])
                      for i, f in enumerate(self.features)])
        self.antecedents = np.vstack([self.antecedents, antecedent])
        self.u_rules = np.vstack([self.u_rules, u])
        self.consequents = np.append(self.consequents, consequent)
        for i in range(len(self.features)):
            col = (self.u_samples[:, i] - u[i]) ** 2
            self.sq[i] = np.column_stack([self.sq[i], col])

    def distances(self, override: tuple[int, np.ndarray] | None = None) -> np.ndarray:
        total = np.zeros_like(self.sq[0])
        for i, sq_i in enumerate(self.sq):
            if override is not None and i == override[0]:
                total = total + override[1]
            else:
                total = total + sq_i
        return np.sqrt(total)

    def feature_sq(self, i: int, scale: FeatureScale) -> np.ndarray:
        """Squared coordinate differences for feature i under a candidate scale."""
        u_s = scale.transform(self.feats[:, i])
        u_r = scale.transform(self.antecedents[:, i])
        return (u_s[:, None] - u_r[None, :]) ** 2

    def commit_feature(self, i: int, partition: Partition, scale: FeatureScale,
                       sq: np.ndarray):
        f = self.features[i]
        self.partitions[f] = partition
        self.scales[f] = scale
        self.u_samples[:, i] = scale.transform(self.feats[:, i])
        self.u_rules[:, i] = scale.transform(self.antecedents[:, i])
        self.sq[i] = sq

    def rule_base(self) -> SparseRuleBase:
        rules = tuple(Rule(tuple(a), float(y))
                      for a, y in zip(self.antecedents, self.consequents))
        return SparseRuleBase(rules, self.features)


def _seed_indices(feats: np.ndarray, targets: np.ndarray) -> tuple[int, int]:
    """Minimum-norm sample of each class; the class-1 pick skips vectors that
    duplicate the class-0 seed so the two antecedents stay distinct."""
    norms = np.linalg.norm(feats, axis=1)
    zero_idx = np.flatnonzero(targets == 0.0)
    one_idx = np.flatnonzero(targets == 1.0)
    i0 = int(zero_idx[np.argmin(norms[zero_idx])])
    order = one_idx[np.argsort(norms[one_idx], kind="stable")]
    for i1 in order:
        if not np.array_equal(feats[i1], feats[i0]):
            return i0, int(i1)
    raise ValueError("cannot seed two distinct rules: every abnormal sample "
                     "duplicates the normal seed")


def generate(train: Sequence[TrainingSample], partitions: dict[str, Partition],
             gcfg: GenerationConfig, icfg: InferenceConfig = InferenceConfig(),
             s_max: float = DEFAULT_S_MAX,
             ) -> tuple[SparseRuleBase, dict[str, Partition], GenerationReport]:
    """Run the rule-base extension loop and return the learned rule base, the
    tuned partitions, and a report of the run."""
    if not train:
        raise ValueError("training data is empty")
    features = tuple(partitions)
    feats = np.array([s.features for s in train], dtype=float)
    targets = np.array([s.target for s in train], dtype=float)
    if feats.shape[1] != len(features):
        raise ValueError(
            f"samples have {feats.shape[1]} features, partitions define {len(features)}"
        )
    if not (np.any(targets == 0.0) and np.any(targets == 1.0)):
        raise ValueError("training data must contain both target classes")
    for p in partitions.values():
        problems = validate_partition(p)
        if problems:
            raise ValueError("invalid partition: " + "; ".join(problems))

    rng = np.random.default_rng(gcfg.rng_seed)
    state = _SearchState(feats, partitions, s_max)

    i0, i1 = _seed_indices(feats, targets)
    state.add_rule(feats[i0].copy(), 0.0)
    state.add_rule(feats[i1].copy(), 1.0)

    def evaluate(d: np.ndarray) -> tuple[np.ndarray, float]:
        preds = shepard_blend(d, state.consequents, icfg.shepard_power,
                              icfg.exact_hit_epsilon)
        return preds, float(np.sqrt(np.mean((preds - targets) ** 2)))

    preds, current = evaluate(state.distances())
    best = current
    history = [best]
    stall = 0
    iterations = 0
    terminated = "rmse_target" if best <= gcfg.rmse_target else None

    def insert_worst() -> bool:
        """Add a rule at the worst insertable sample; False when none is left."""
        d = state.distances()
        errors = np.abs(preds - targets)
        insertable = d.min(axis=1) >= icfg.exact_hit_epsilon
        if not np.any(insertable):
            return False
        order = np.argsort(-errors, kind="stable")
        idx = next(int(i) for i in order if insertable[i])
        state.add_rule(feats[idx].copy(), float(targets[idx]))
        return True

    while terminated is None and iterations < gcfg.max_iterations:
        iterations += 1

        fi = int(rng.integers(len(features)))
        fname = features[fi]
        part = state.partitions[fname]
        si = int(rng.integers(len(part.sets)))
        corner = int(rng.integers(4))
        sign = 1.0 if rng.integers(2) else -1.0
        lo, hi = part.universe
        step = gcfg.step_fraction * (hi - lo)

        trap = part.sets[si]
        bps = list(trap.breakpoints)
        lower = (lo, trap.a, trap.b, trap.c)[corner]
        upper = (trap.b, trap.c, trap.d, hi)[corner]
        proposal = min(max(bps[corner] + sign * step, lower), upper)

        if proposal != bps[corner]:
            bps[corner] = proposal
            cand_sets = list(part.sets)
            cand_sets[si] = TrapezoidSet(trap.term, *bps)
            cand_part = replace(part, sets=tuple(cand_sets))
            if not validate_partition(cand_part):
                cand_scale = FeatureScale(derive_scaling(cand_part, s_max))
                cand_sq = state.feature_sq(fi, cand_scale)
                cand_preds, cand_rmse = evaluate(state.distances((fi, cand_sq)))
                if cand_rmse < current:
                    state.commit_feature(fi, cand_part, cand_scale, cand_sq)
                    preds, current = cand_preds, cand_rmse

        if current < best:
            best = current
            stall = 0
        else:
            stall += 1
        history.append(best)

        if best <= gcfg.rmse_target:
            terminated = "rmse_target"
        elif stall >= gcfg.stagnation_window:
            if len(state.consequents) >= gcfg.max_rules:
                terminated = "max_rules"
            elif not insert_worst():
                terminated = "no_insertable_sample"
            else:
                preds, current = evaluate(state.distances())
                stall = 0
                if current < best:
                    best = current
                    history.append(best)
                if best <= gcfg.rmse_target:
                    terminated = "rmse_target"
                elif len(state.consequents) >= gcfg.max_rules:
                    terminated = "max_rules"

    if terminated is None:
        terminated = "max_iterations"

    report = GenerationReport(
        iterations_used=iterations,
        rmse_history=tuple(history),
        final_rule_count=len(state.consequents),
        terminated_by=terminated,
    )
    return state.rule_base(), dict(state.partitions), report
