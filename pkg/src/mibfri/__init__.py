"""Network abnormality detection from SNMP-MIB counters using fuzzy rule
interpolation over a vague environment, with a sparse-rule learner and an
evaluation harness."""

from .dataset import MibRecord, Repositories, SplitConfig, clean, load_csv, split
from .engine import (
    InferenceConfig,
    Label,
    Rule,
    SparseRuleBase,
    classify,
    compile_linguistic_rules,
    infer,
    infer_batch,
)
from .fuzzysets import (
    Partition,
    Term,
    TrapezoidSet,
    locate_terms,
    membership,
    validate_partition,
)
from .learner import (
    GenerationConfig,
    GenerationReport,
    TrainingSample,
    generate,
    max_error_sample,
    rmse,
)
from .metrics import ConfusionMatrix, MetricsReport, confusion, metrics
from .mib import FEATURE_ORDER, LINGUISTIC_RULE_ROWS, default_partitions
from .vague import (
    FeatureScale,
    ScalingFunction,
    VagueEnvironment,
    derive_scaling,
)

__all__ = [
    "ConfusionMatrix", "FEATURE_ORDER", "FeatureScale", "GenerationConfig",
    "GenerationReport", "InferenceConfig", "Label", "LINGUISTIC_RULE_ROWS",
    "MetricsReport", "MibRecord", "Partition", "Repositories", "Rule",
    "ScalingFunction", "SparseRuleBase", "SplitConfig", "Term",
    "TrainingSample", "TrapezoidSet", "VagueEnvironment", "classify", "clean",
    "compile_linguistic_rules", "confusion", "default_partitions",
    "derive_scaling", "generate", "infer", "infer_batch", "load_csv",
    "locate_terms", "max_error_sample", "membership", "metrics", "rmse",
    "split", "validate_partition",
]
