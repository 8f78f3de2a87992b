"""Trapezoidal fuzzy sets, linguistic terms and per-feature partitions."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass


class Term(enum.Enum):
    """Closed five-term linguistic vocabulary."""

    VERY_LOW = "VeryLow"
    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"
    VERY_HIGH = "VeryHigh"

    @classmethod
    def parse(cls, name: str) -> "Term":
        """Accept spelling variants: 'Very Low', 'VL', 'very_low', 'VeryLow'."""
        key = re.sub(r"[\s_\-]+", "", str(name)).lower()
        aliases = {
            "verylow": cls.VERY_LOW, "vl": cls.VERY_LOW,
            "low": cls.LOW, "l": cls.LOW,
            "medium": cls.MEDIUM, "m": cls.MEDIUM,
            "high": cls.HIGH, "h": cls.HIGH, "large": cls.HIGH,
            "veryhigh": cls.VERY_HIGH, "vh": cls.VERY_HIGH, "verylarge": cls.VERY_HIGH,
        }
        if key not in aliases:
            raise ValueError(f"unknown linguistic term: {name!r}")
        return aliases[key]


@dataclass(frozen=True)
class TrapezoidSet:
    """Trapezoid with breakpoints a <= b <= c <= d; zero-width flanks allowed."""

    term: Term
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not math.isfinite(v):
                raise ValueError(f"non-finite breakpoint in {self.term.value} set")

    @property
    def core_midpoint(self) -> float:
        return (self.b + self.c) / 2.0

    @property
    def breakpoints(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Partition:
    """Ordered fuzzy sets over one feature's universe [lo, hi]."""

    feature_name: str
    universe: tuple[float, float]
    sets: tuple[TrapezoidSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(float(v) for v in self.universe))
        object.__setattr__(self, "sets", tuple(self.sets))

    def set_by_term(self, term: Term) -> TrapezoidSet:
        for s in self.sets:
            if s.term is term:
                return s
        raise KeyError(f"partition {self.feature_name!r} has no {term.value} set")


def membership(s: TrapezoidSet, x: float) -> float:
    """Degree of x in the trapezoid; zero-width flanks behave as steps with the
    edge point itself mapping to 1."""
    if not math.isfinite(x):
        raise ValueError("membership requires a finite input")
    if x < s.a or x > s.d:
        return 0.0
    if s.b <= x <= s.c:
        return 1.0
    if x < s.b:
        return (x - s.a) / (s.b - s.a)
    return (s.d - x) / (s.d - s.c)


def validate_partition(p: Partition) -> list[str]:
    """Return a list of invariant violations; empty means the partition is valid."""
    problems = []
    lo, hi = p.universe
    if lo > hi:
        problems.append(f"{p.feature_name}: universe lo > hi")
    if not p.sets:
        problems.append(f"{p.feature_name}: partition has no sets")
    for s in p.sets:
        if not (s.a <= s.b <= s.c <= s.d):
            problems.append(f"{p.feature_name}/{s.term.value}: breakpoints not monotone")
        if s.a < lo or s.d > hi:
            problems.append(f"{p.feature_name}/{s.term.value}: set outside universe")
    mids = [s.core_midpoint for s in p.sets]
    for left, right, prev, cur in zip(p.sets, p.sets[1:], mids, mids[1:]):
        if cur == prev:
            problems.append(
                f"{p.feature_name}: ambiguous ordering of {left.term.value} and {right.term.value}"
            )
        elif cur < prev:
            problems.append(
                f"{p.feature_name}: {right.term.value} ordered before {left.term.value}"
            )
    return problems


def locate_terms(p: Partition, x: float) -> list[tuple[Term, float]]:
    """All terms with nonzero membership at x; an empty list marks a coverage gap."""
    out = []
    for s in p.sets:
        deg = membership(s, x)
        if deg > 0.0:
            out.append((s.term, deg))
    return out
