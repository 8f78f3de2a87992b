"""Command-line driver: clean, train, evaluate, infer and response-curve
subcommands with INI config files, flag overrides and deterministic outputs."""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import docio, mib
from .dataset import SplitConfig, clean, load_csv, split
from .engine import InferenceConfig, Label, classify, infer, infer_batch
from .learner import GenerationConfig, generate
from .metrics import confusion, metrics
from .vague import FeatureScale, VagueEnvironment, derive_scaling


@dataclass
class RunConfig:
    paths: dict[str, str] = field(default_factory=dict)
    split: SplitConfig = SplitConfig(rng_seed=0)
    generation: GenerationConfig = GenerationConfig(rng_seed=0)
    inference: InferenceConfig = InferenceConfig()
    emit_plot_data: bool = False


def _load_ini(path) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    if path:
        if not Path(path).exists():
            raise FileNotFoundError(f"config file not found: {path}")
        parser.read(path)
    return parser


def _setting(flag_value, ini, section, key, default, cast):
    if flag_value is not None:
        return flag_value
    if ini.has_option(section, key):
        return cast(ini.get(section, key))
    return default


def resolve_config(args) -> RunConfig:
    ini = _load_ini(getattr(args, "config", None))
    seed_flag = getattr(args, "seed", None)

    def ival(section, key, default, flag=None):
        return int(_setting(flag, ini, section, key, default, int))

    def fval(section, key, default, flag=None):
        return float(_setting(flag, ini, section, key, default, float))

    paths = dict(ini["paths"]) if ini.has_section("paths") else {}
    for key in ("data", "rules", "partitions", "out"):
        flag = getattr(args, key, None)
        if flag is not None:
            paths[key] = flag

    split_cfg = SplitConfig(
        rng_seed=ival("split", "seed", 0, seed_flag),
        train_fraction=fval("split", "train_fraction", 0.6,
                            getattr(args, "train_fraction", None)),
    )
    gen_cfg = GenerationConfig(
        rng_seed=ival("generation", "seed", 0, seed_flag),
        max_rules=ival("generation", "max_rules", 400,
                       getattr(args, "max_rules", None)),
        stagnation_window=ival("generation", "stagnation_window", 10),
        rmse_target=fval("generation", "rmse_target", 0.05,
                         getattr(args, "rmse_target", None)),
        max_iterations=ival("generation", "max_iterations", 5000,
                            getattr(args, "max_iterations", None)),
        step_fraction=fval("generation", "step_fraction", 0.05),
    )
    inf_cfg = InferenceConfig(
        shepard_power=fval("inference", "shepard_power", 2.0),
        exact_hit_epsilon=fval("inference", "exact_hit_epsilon", 1e-9),
        decision_threshold=fval("inference", "decision_threshold", 0.5),
    )
    return RunConfig(paths=paths, split=split_cfg, generation=gen_cfg,
                     inference=inf_cfg,
                     emit_plot_data=bool(getattr(args, "scores", False)))


def _require_path(cfg: RunConfig, key: str, must_exist: bool = True) -> Path:
    if key not in cfg.paths:
        raise ValueError(f"no {key!r} path given (flag --{key} or [paths] {key})")
    p = Path(cfg.paths[key])
    if must_exist and not p.exists():
        raise FileNotFoundError(f"{key} path does not exist: {p}")
    return p


def _out_dir(cfg: RunConfig) -> Path:
    out = _require_path(cfg, "out", must_exist=False)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_environment(cfg: RunConfig):
    """Rule base plus the environment from the partitions document; stored
    scalings win over re-derivation when present."""
    rb = docio.read_rule_base(_require_path(cfg, "rules"))
    partitions, scalings = docio.read_partitions(_require_path(cfg, "partitions"))
    missing = [f for f in rb.feature_order if f not in partitions]
    if missing:
        raise ValueError(f"partitions document lacks features: {missing}")
    scales = {}
    for f in rb.feature_order:
        fn = scalings.get(f) or derive_scaling(partitions[f])
        scales[f] = FeatureScale(fn)
    return rb, VagueEnvironment(scales, rb.feature_order)


def cmd_clean(cfg: RunConfig) -> int:
    data = _require_path(cfg, "data")
    out = _out_dir(cfg)
    records = load_csv(data)
    repos = clean(records)
    train, validation = split(repos, cfg.split)

    docio.write_samples(out / "normal.csv", repos.normal, mib.FEATURE_ORDER)
    docio.write_samples(out / "abnormal.csv", repos.abnormal, mib.FEATURE_ORDER)
    docio.write_samples(out / "train.csv", train, mib.FEATURE_ORDER)
    docio.write_samples(out / "validation.csv", validation, mib.FEATURE_ORDER)
    docio.write_keyvalues(out / "manifest.txt", {
        "dataset": cfg.paths["data"],
        "records": len(records),
        "normal": len(repos.normal),
        "abnormal": len(repos.abnormal),
        "train_fraction": cfg.split.train_fraction,
        "seed": cfg.split.rng_seed,
        "train": len(train),
        "validation": len(validation),
        "train_normal": sum(1 for s in train if s.target == 0.0),
        "train_abnormal": sum(1 for s in train if s.target == 1.0),
    })
    print(f"cleaned {len(records)} records: {len(repos.normal)} normal, "
          f"{len(repos.abnormal)} abnormal; split {len(train)}/{len(validation)}")
    return 0


def cmd_train(cfg: RunConfig) -> int:
    data = _require_path(cfg, "data")
    out = _out_dir(cfg)
    samples, feature_order = docio.read_samples(data)
    if "partitions" in cfg.paths:
        partitions, _ = docio.read_partitions(_require_path(cfg, "partitions"))
        partitions = {f: partitions[f] for f in feature_order}
    else:
        partitions = mib.default_partitions()

    rb, tuned, report = generate(samples, partitions, cfg.generation, cfg.inference)

    scalings = {f: derive_scaling(p) for f, p in tuned.items()}
    docio.write_rule_base(out / "rulebase.txt", rb)
    docio.write_partitions(out / "partitions.txt", tuned, scalings)
    docio.write_keyvalues(out / "report.txt", {
        "seed": cfg.generation.rng_seed,
        "max_rules": cfg.generation.max_rules,
        "stagnation_window": cfg.generation.stagnation_window,
        "rmse_target": cfg.generation.rmse_target,
        "max_iterations": cfg.generation.max_iterations,
        "step_fraction": cfg.generation.step_fraction,
        "shepard_power": cfg.inference.shepard_power,
        "exact_hit_epsilon": cfg.inference.exact_hit_epsilon,
        "iterations_used": report.iterations_used,
        "final_rule_count": report.final_rule_count,
        "final_rmse": format(report.rmse_history[-1], ".17g"),
        "terminated_by": report.terminated_by,
        "rmse_history": ",".join(format(v, ".17g") for v in report.rmse_history),
    })
    print(f"trained {report.final_rule_count} rules in {report.iterations_used} "
          f"iterations (rmse {report.rmse_history[-1]:.4f}, "
          f"stopped by {report.terminated_by})")
    return 0


def cmd_evaluate(cfg: RunConfig, threshold: float | None = None) -> int:
    data = _require_path(cfg, "data")
    out = _out_dir(cfg)
    rb, env = _load_environment(cfg)
    samples, feature_order = docio.read_samples(data)
    if feature_order != rb.feature_order:
        raise ValueError("sample features do not match the rule base feature order")

    feats = np.array([s.features for s in samples], dtype=float)
    degrees = infer_batch(rb, env, feats, cfg.inference)
    thr = cfg.inference.decision_threshold if threshold is None else threshold
    predicted = [Label.ABNORMAL if d >= thr else Label.NORMAL for d in degrees]
    actual = [Label.ABNORMAL if s.target == 1.0 else Label.NORMAL for s in samples]

    cm = confusion(predicted, actual)
    report = metrics(cm)
    docio.write_metrics(out / "metrics.txt", out / "metrics.json", cm, report)
    if cfg.emit_plot_data:
        with (out / "scores.csv").open("w") as fh:
            fh.write(",".join(feature_order) + ",target,degree,label\n")
            for s, d, p in zip(samples, degrees, predicted):
                vals = ",".join(format(v, ".17g") for v in s.features)
                fh.write(f"{vals},{int(s.target)},{format(float(d), '.17g')},{p}\n")
    print(docio.metrics_text(cm, report), end="")
    return 0


def cmd_infer(cfg: RunConfig, values: list[float]) -> int:
    rb, env = _load_environment(cfg)
    if len(values) != len(rb.feature_order):
        raise ValueError(
            f"expected {len(rb.feature_order)} feature values, got {len(values)}"
        )
    degree = infer(rb, env, values, cfg.inference)
    label = classify(degree, cfg.inference)
    print(f"{format(degree, '.17g')} {label}")
    return 0


def cmd_response_curve(cfg: RunConfig, feature: str, start: float, stop: float,
                       steps: int, fixed: list[float]) -> int:
    rb, env = _load_environment(cfg)
    if feature not in rb.feature_order:
        raise ValueError(f"unknown feature {feature!r}; rule base uses "
                         f"{', '.join(rb.feature_order)}")
    if len(fixed) != len(rb.feature_order):
        raise ValueError(
            f"--fixed needs {len(rb.feature_order)} comma-separated values"
        )
    if steps < 2:
        raise ValueError("--steps must be at least 2")
    fi = rb.feature_order.index(feature)
    xs = np.linspace(start, stop, steps)
    obs = np.tile(np.asarray(fixed, dtype=float), (steps, 1))
    obs[:, fi] = xs
    degrees = infer_batch(rb, env, obs, cfg.inference)

    lines = ["x,degree"]
    lines += [f"{format(float(x), '.17g')},{format(float(d), '.17g')}"
              for x, d in zip(xs, degrees)]
    text = "\n".join(lines) + "\n"
    if "out" in cfg.paths:
        out = _out_dir(cfg)
        (out / "response_curve.csv").write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mibfri",
        description="Network abnormality detection from MIB counters via "
                    "fuzzy rule interpolation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_model=False):
        p.add_argument("--config", help="INI config file")
        p.add_argument("--seed", type=int, help="seed for split and training")
        p.add_argument("--out", help="output directory")
        if needs_model:
            p.add_argument("--rules", help="rule base document")
            p.add_argument("--partitions", help="partitions document")

    p = sub.add_parser("clean", help="ingest, clean and split a counter CSV")
    common(p)
    p.add_argument("--data", help="input counter CSV")
    p.add_argument("--train-fraction", dest="train_fraction", type=float)

    p = sub.add_parser("train", help="learn a sparse rule base from a train CSV")
    common(p)
    p.add_argument("--data", help="training sample CSV")
    p.add_argument("--partitions", help="starting partitions document")
    p.add_argument("--max-rules", dest="max_rules", type=int)
    p.add_argument("--max-iterations", dest="max_iterations", type=int)
    p.add_argument("--rmse-target", dest="rmse_target", type=float)

    p = sub.add_parser("evaluate", help="score a sample CSV against a rule base")
    common(p, needs_model=True)
    p.add_argument("--data", help="validation sample CSV")
    p.add_argument("--threshold", type=float,
                   help="decision threshold in [0, 1] for labeling")
    p.add_argument("--scores", action="store_true",
                   help="also write per-sample degrees")

    p = sub.add_parser("infer", help="score one observation")
    common(p, needs_model=True)
    p.add_argument("values", nargs="+", type=float,
                   help="one value per feature, in rule-base order")

    p = sub.add_parser("response-curve",
                       help="sweep one feature and emit (x, degree) pairs")
    common(p, needs_model=True)
    p.add_argument("--feature", required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--fixed", required=True,
                   help="comma-separated full observation; the swept "
                        "coordinate is replaced")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "clean":
            return cmd_clean(cfg)
        if args.command == "train":
            return cmd_train(cfg)
        if args.command == "evaluate":
            thr = args.threshold
            if thr is not None and not 0.0 <= thr <= 1.0:
                raise ValueError("--threshold must lie in [0, 1]")
            return cmd_evaluate(cfg, threshold=thr)
        if args.command == "infer":
            return cmd_infer(cfg, args.values)
        if args.command == "response-curve":
            fixed = [float(v) for v in args.fixed.split(",")]
            return cmd_response_curve(cfg, args.feature, args.start, args.stop,
                                      args.steps, fixed)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())
