"""Text document formats for the pipeline artifacts: partition and scaling
documents, rule-base documents, repository CSVs and key-value reports."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

from .engine import Rule, SparseRuleBase
from .fuzzysets import Partition, Term, TrapezoidSet
from .learner import TrainingSample
from .metrics import ConfusionMatrix, MetricsReport
from .vague import ScalingFunction


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt17(x: float) -> str:
    return format(float(x), ".17g")


def write_partitions(path, partitions: dict[str, Partition],
                     scalings: dict[str, ScalingFunction] | None = None) -> None:
    """One block per feature: universe, sets and (optionally) the per-feature
    scaling breakpoints. Floats are printed so they parse back bit-exactly."""
    lines = []
    for name, p in partitions.items():
        lines.append(f"partition {name}")
        lines.append(f"universe {_fmt(p.universe[0])} {_fmt(p.universe[1])}")
        for s in p.sets:
            lines.append(
                f"set {s.term.value} {_fmt(s.a)} {_fmt(s.b)} {_fmt(s.c)} {_fmt(s.d)}"
            )
        if scalings and name in scalings:
            fn = scalings[name]
            for x, v in zip(fn.breakpoints, fn.values):
                lines.append(f"scale {_fmt(x)} {_fmt(v)}")
        lines.append("")
    Path(path).write_text("\n".join(lines))


def read_partitions(path) -> tuple[dict[str, Partition], dict[str, ScalingFunction]]:
    partitions: dict[str, Partition] = {}
    scalings: dict[str, ScalingFunction] = {}
    name = None
    universe = None
    sets: list[TrapezoidSet] = []
    scale_points: list[tuple[float, float]] = []

    def flush():
        nonlocal name, universe, sets, scale_points
        if name is None:
            return
        if universe is None:
            raise ValueError(f"partition {name}: missing universe line")
        partitions[name] = Partition(name, universe, tuple(sets))
        if scale_points:
            xs, vs = zip(*scale_points)
            scalings[name] = ScalingFunction(xs, vs)
        name, universe, sets, scale_points = None, None, [], []

    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        try:
            if kind == "partition":
                flush()
                name = tokens[1]
            elif kind == "universe":
                universe = (float(tokens[1]), float(tokens[2]))
            elif kind == "set":
                sets.append(TrapezoidSet(Term.parse(tokens[1]), *map(float, tokens[2:6])))
            elif kind == "scale":
                scale_points.append((float(tokens[1]), float(tokens[2])))
            else:
                raise ValueError(f"unknown directive {kind!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"{path}: line {line_no}: {exc}") from None
    flush()
    if not partitions:
        raise ValueError(f"{path}: no partitions found")
    return partitions, scalings


def write_rule_base(path, rb: SparseRuleBase) -> None:
    """Feature order line followed by one rule per line, antecedent values then
    consequent, each printed with 17 significant digits."""
    lines = ["features " + " ".join(rb.feature_order)]
    for r in rb.rules:
        vals = " ".join(_fmt17(v) for v in r.antecedent)
        lines.append(f"rule {vals} {_fmt17(r.consequent)}")
    lines.append("")
    Path(path).write_text("\n".join(lines))


def read_rule_base(path) -> SparseRuleBase:
    feature_order: tuple[str, ...] | None = None
    rules: list[Rule] = []
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "features":
            feature_order = tuple(tokens[1:])
        elif tokens[0] == "rule":
            if feature_order is None:
                raise ValueError(f"{path}: line {line_no}: rule before features line")
            values = [float(t) for t in tokens[1:]]
            if len(values) != len(feature_order) + 1:
                raise ValueError(
                    f"{path}: line {line_no}: expected "
                    f"{len(feature_order) + 1} values, got {len(values)}"
                )
            rules.append(Rule(tuple(values[:-1]), values[-1]))
        else:
            raise ValueError(f"{path}: line {line_no}: unknown directive {tokens[0]!r}")
    if feature_order is None or not rules:
        raise ValueError(f"{path}: no rules found")
    return SparseRuleBase(tuple(rules), feature_order)


def write_samples(path, samples: Sequence[TrainingSample],
                  feature_order: Sequence[str]) -> None:
    """Repository/split CSV: the feature columns plus a 0/1 target column."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(feature_order) + ["target"])
        for s in samples:
            writer.writerow([_fmt17(v) for v in s.features] + [str(int(s.target))])


def read_samples(path) -> tuple[list[TrainingSample], tuple[str, ...]]:
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[-1] != "target":
            raise ValueError(f"{path}: expected a sample CSV with a target column")
        feature_order = tuple(header[:-1])
        samples = [
            TrainingSample(tuple(float(v) for v in row[:-1]), float(row[-1]))
            for row in reader if row
        ]
    if not samples:
        raise ValueError(f"{path}: no samples found")
    return samples, feature_order


def write_keyvalues(path, pairs: dict) -> None:
    lines = [f"{k} {v}" for k, v in pairs.items()]
    lines.append("")
    Path(path).write_text("\n".join(lines))


def read_keyvalues(path) -> dict[str, str]:
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        out[key] = value.strip()
    return out


def metrics_text(cm: ConfusionMatrix, report: MetricsReport) -> str:
    lines = [
        f"tp {cm.tp}", f"tn {cm.tn}", f"fp {cm.fp}", f"fn {cm.fn}",
    ]
    for key, value in report.as_dict().items():
        lines.append(f"{key} {'n/a' if value is None else _fmt17(value)}")
    lines.append("")
    return "\n".join(lines)


def write_metrics(text_path, json_path, cm: ConfusionMatrix,
                  report: MetricsReport) -> None:
    Path(text_path).write_text(metrics_text(cm, report))
    payload = {"tp": cm.tp, "tn": cm.tn, "fp": cm.fp, "fn": cm.fn}
    payload.update(report.as_dict())
    Path(json_path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
