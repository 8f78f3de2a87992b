"""Dataset ingestion and cleaning: parse the 34-counter CSV, project the five
detection features into normal/abnormal repositories, and split for training."""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import mib
from .learner import TrainingSample


@dataclass(frozen=True)
class MibRecord:
    """One dataset row: every counter keyed by canonical name, plus the
    traffic-class label."""

    counters: dict[str, float]
    label: str

    def feature_vector(self) -> tuple[float, ...]:
        return tuple(self.counters[f] for f in mib.FEATURE_ORDER)


@dataclass(frozen=True)
class Repositories:
    normal: tuple[TrainingSample, ...]
    abnormal: tuple[TrainingSample, ...]


@dataclass(frozen=True)
class SplitConfig:
    rng_seed: int
    train_fraction: float = 0.6

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie in (0, 1)")


_LABEL_COLUMN_NAMES = {"class", "label", "type"}


def load_csv(path) -> list[MibRecord]:
    """Parse a counter CSV with a header row. Headers match the canonical
    counter vocabulary case-insensitively; the label column may be named
    class, label or type."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None

        col_map: dict[int, str] = {}
        label_col = None
        for i, name in enumerate(header):
            if name.strip().lower() in _LABEL_COLUMN_NAMES:
                label_col = i
                continue
            try:
                col_map[i] = mib.canonical_column(name)
            except KeyError:
                continue  # unrecognized extra columns are ignored
        if label_col is None:
            raise ValueError(f"{path}: no label column (expected class, label or type)")
        present = set(col_map.values())
        for required in mib.MIB_COLUMNS:
            if required not in present:
                raise ValueError(f"{path}: missing required column {required}")

        records = []
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            counters = {}
            for i, canonical in col_map.items():
                cell = row[i].strip()
                try:
                    value = float(cell)
                except ValueError:
                    raise ValueError(
                        f"{path}: row {row_no}, column {canonical}: "
                        f"non-numeric value {cell!r}"
                    ) from None
                if not math.isfinite(value) or value < 0:
                    raise ValueError(
                        f"{path}: row {row_no}, column {canonical}: "
                        f"counter must be a non-negative finite number, got {cell!r}"
                    )
                counters[canonical] = value
            records.append(MibRecord(counters, row[label_col].strip()))

    if not records:
        raise ValueError(f"{path}: no data rows")
    return records


def clean(records: Sequence[MibRecord]) -> Repositories:
    """Project records onto the five detection features and route them into
    the normal (target 0) and abnormal (target 1) repositories."""
    if not records:
        raise ValueError("no records to clean")
    normal, abnormal = [], []
    for rec in records:
        try:
            label = mib.canonical_label(rec.label)
        except KeyError:
            raise ValueError(f"unknown traffic class label: {rec.label!r}") from None
        sample_target = 0.0 if label == mib.NORMAL_LABEL else 1.0
        sample = TrainingSample(rec.feature_vector(), sample_target)
        (normal if sample_target == 0.0 else abnormal).append(sample)
    return Repositories(tuple(normal), tuple(abnormal))


def split(repos: Repositories, cfg: SplitConfig,
          ) -> tuple[list[TrainingSample], list[TrainingSample]]:
    """Stratified split: each repository contributes floor(fraction * size)
    uniformly chosen samples to the training side, the rest to validation."""
    if not repos.normal or not repos.abnormal:
        raise ValueError("both repositories must be non-empty")
    rng = random.Random(cfg.rng_seed)
    train: list[TrainingSample] = []
    validation: list[TrainingSample] = []
    for group in (repos.normal, repos.abnormal):
        n_train = int(cfg.train_fraction * len(group))
        if n_train == 0 or n_train == len(group):
            raise ValueError(
                f"train_fraction {cfg.train_fraction} leaves an empty side "
                f"for a repository of {len(group)} samples"
            )
        chosen = set(rng.sample(range(len(group)), n_train))
        train.extend(s for i, s in enumerate(group) if i in chosen)
        validation.extend(s for i, s in enumerate(group) if i not in chosen)
    return train, validation
