"""Vague environment: per-feature scaling functions and the distance they
induce via the cumulative integral."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fuzzysets import Partition, validate_partition

DEFAULT_S_MAX = 1e6


@dataclass(frozen=True)
class ScalingFunction:
    """Piecewise-linear, non-negative scaling over a universe. Breakpoints are
    strictly increasing and span [lo, hi]; outside them the function is
    constant (the span already covers the universe after derivation)."""

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        bps = tuple(float(x) for x in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        if len(bps) != len(vals) or not bps:
            raise ValueError("breakpoints and values must be non-empty and equal length")
        if any(not math.isfinite(x) for x in bps + vals):
            raise ValueError("scaling breakpoints and values must be finite")
        if any(v < 0 for v in vals):
            raise ValueError("scaling values must be non-negative")
        if any(x2 <= x1 for x1, x2 in zip(bps, bps[1:])):
            raise ValueError("scaling breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)


def derive_scaling(p: Partition, s_max: float = DEFAULT_S_MAX) -> ScalingFunction:
    """Approximate universal scaling for one partition: each flank of width
    w > 0 contributes value 1/w at its midpoint, each zero-width flank
    contributes s_max at its edge; linear interpolation in between, constant
    out to the universe bounds. Coinciding contributions keep the steeper one."""
    if s_max <= 0:
        raise ValueError("s_max must be positive")
    problems = validate_partition(p)
    if problems:
        raise ValueError("invalid partition: " + "; ".join(problems))

    points: dict[float, float] = {}

    def contribute(x: float, v: float):
        points[x] = max(points.get(x, 0.0), v)

    for s in p.sets:
        for lo_edge, hi_edge in ((s.a, s.b), (s.c, s.d)):
            w = hi_edge - lo_edge
            if w > 0:
                contribute((lo_edge + hi_edge) / 2.0, 1.0 / w)
            else:
                contribute(lo_edge, s_max)

    lo, hi = p.universe
    xs = sorted(points)
    vals = [points[x] for x in xs]
    if xs[0] > lo:
        xs.insert(0, lo)
        vals.insert(0, vals[0])
    if xs[-1] < hi:
        xs.append(hi)
        vals.append(vals[-1])
    return ScalingFunction(tuple(xs), tuple(vals))


class FeatureScale:
    """One feature's scaling plus its exact cumulative integral C, with
    C(lo) = 0. C is piecewise quadratic; segment integrals use the closed
    trapezoid form, which is exact for a piecewise-linear integrand."""

    def __init__(self, fn: ScalingFunction):
        self.fn = fn
        self._x = np.asarray(fn.breakpoints, dtype=float)
        self._v = np.asarray(fn.values, dtype=float)
        if len(self._x) > 1:
            seg = np.diff(self._x) * (self._v[:-1] + self._v[1:]) / 2.0
            self._c = np.concatenate(([0.0], np.cumsum(seg)))
            self._slope = np.diff(self._v) / np.diff(self._x)
        else:
            self._c = np.zeros(1)
            self._slope = np.zeros(0)

    @property
    def lo(self) -> float:
        return float(self._x[0])

    @property
    def hi(self) -> float:
        return float(self._x[-1])

    def transform(self, x):
        """C(x) for scalar or array input; values outside [lo, hi] clamp."""
        x = np.clip(np.asarray(x, dtype=float), self._x[0], self._x[-1])
        if len(self._x) == 1:
            out = np.zeros_like(x)
            return float(out) if out.ndim == 0 else out
        idx = np.clip(np.searchsorted(self._x, x, side="right") - 1, 0, len(self._x) - 2)
        t = x - self._x[idx]
        s_here = self._v[idx] + self._slope[idx] * t
        out = self._c[idx] + t * (self._v[idx] + s_here) / 2.0
        return float(out) if out.ndim == 0 else out

    def distance(self, x1: float, x2: float) -> float:
        return abs(self.transform(x1) - self.transform(x2))


class VagueEnvironment:
    """Per-feature scales over an ordered feature tuple."""

    def __init__(self, scales: dict[str, FeatureScale], feature_order=None):
        self.feature_order = tuple(feature_order) if feature_order else tuple(scales)
        missing = [f for f in self.feature_order if f not in scales]
        if missing:
            raise KeyError(f"no scaling for features: {missing}")
        self.scales = {f: scales[f] for f in self.feature_order}

    @classmethod
    def from_partitions(cls, partitions: dict[str, Partition],
                        s_max: float = DEFAULT_S_MAX) -> "VagueEnvironment":
        scales = {name: FeatureScale(derive_scaling(p, s_max))
                  for name, p in partitions.items()}
        return cls(scales, tuple(partitions))

    def scale(self, feature: str) -> FeatureScale:
        if feature not in self.scales:
            raise KeyError(f"unknown feature: {feature!r}")
        return self.scales[feature]

    def vague_distance(self, feature: str, x1: float, x2: float) -> float:
        """|integral of the scaling from x2 to x1|, via the cumulative form."""
        return self.scale(feature).distance(x1, x2)

    def distinguishable(self, feature: str, x1: float, x2: float, epsilon: float) -> bool:
        """True iff the vague distance strictly exceeds epsilon."""
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        return self.vague_distance(feature, x1, x2) > epsilon

    def transform_points(self, points) -> np.ndarray:
        """Map raw vectors (n, k) or (k,) into vague coordinates, feature by
        feature in environment order."""
        pts = np.asarray(points, dtype=float)
        squeeze = pts.ndim == 1
        if squeeze:
            pts = pts[None, :]
        if pts.shape[1] != len(self.feature_order):
            raise ValueError(
                f"expected {len(self.feature_order)} coordinates, got {pts.shape[1]}"
            )
        cols = [self.scales[f].transform(pts[:, i])
                for i, f in enumerate(self.feature_order)]
        out = np.column_stack(cols)
        return out[0] if squeeze else out

    def composite_distance(self, obs, point, p: float = 2.0) -> float:
        """p-norm of the per-feature vague distances (Euclidean by default)."""
        u = self.transform_points(obs)
        v = self.transform_points(point)
        if u.ndim != 1 or v.ndim != 1:
            raise ValueError("composite_distance takes single vectors")
        deltas = np.abs(u - v)
        if p == 2.0:
            return float(np.sqrt(np.sum(deltas * deltas)))
        return float(np.sum(deltas ** p) ** (1.0 / p))
