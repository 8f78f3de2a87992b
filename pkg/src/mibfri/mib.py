"""SNMP-MIB domain constants: counter vocabulary, traffic classes, the tuned
trapezoid parameters for the five detection features, and the built-in sample
of linguistic rules."""

from __future__ import annotations

import re

from .fuzzysets import Partition, Term, TrapezoidSet

# The five detection features, in the canonical order used by every vector in
# the pipeline (samples, rule antecedents, serialized artifacts).
FEATURE_ORDER = (
    "ifOutDiscards",
    "ifInDiscards",
    "ipOutDiscards",
    "ipInDiscards",
    "icmpOutDestUnreachs",
)

# Full 34-counter vocabulary, grouped IF / TCP / IP / ICMP / UDP.
MIB_COLUMNS = (
    "ifInOctets", "ifOutOctets", "ifOutDiscards", "ifInUcastPkts",
    "ifInNUcastPkts", "ifInDiscards", "ifOutUcastPkts", "ifOutNUcastPkts",
    "tcpOutRsts", "tcpInSegs", "tcpOutSegs", "tcpPassiveOpens",
    "tcpRetransSegs", "tcpCurrEstab", "tcpEstabResets", "tcpActiveOpens",
    "ipInReceives", "ipInDelivers", "ipOutRequests", "ipOutDiscards",
    "ipInDiscards", "ipForwDatagrams", "ipOutNoRoutes", "ipInAddrErrors",
    "icmpInMsgs", "icmpInDestUnreachs", "icmpOutMsgs", "icmpOutDestUnreachs",
    "icmpInEchos", "icmpOutEchoReps",
    "udpInDatagrams", "udpOutDatagrams", "udpInErrors", "udpNoPorts",
)

NORMAL_LABEL = "Normal"
ATTACK_LABELS = (
    "TCP-SYN", "UDP flood", "ICMP-ECHO", "HTTP flood",
    "Slowloris", "Slowpost", "Brute Force",
)
ALL_LABELS = (NORMAL_LABEL,) + ATTACK_LABELS

# Spelling variants seen in dataset headers and prose, keyed by the squeezed
# lowercase form (separators stripped).
_EXTRA_COLUMN_ALIASES = {
    "icmpoutdestunreaches": "icmpOutDestUnreachs",
    "ipindiscardsfor": "ipInDiscards",
}


def _squeeze(name: str) -> str:
    return re.sub(r"[\s_\-]+", "", str(name)).lower()


_COLUMN_BY_KEY = {_squeeze(c): c for c in MIB_COLUMNS}
_COLUMN_BY_KEY.update(_EXTRA_COLUMN_ALIASES)
_LABEL_BY_KEY = {_squeeze(l): l for l in ALL_LABELS}


def canonical_column(name: str) -> str:
    """Map a header spelling variant to the canonical counter name."""
    key = _squeeze(name)
    if key not in _COLUMN_BY_KEY:
        raise KeyError(f"unknown MIB counter name: {name!r}")
    return _COLUMN_BY_KEY[key]


def canonical_label(name: str) -> str:
    key = _squeeze(name)
    if key not in _LABEL_BY_KEY:
        raise KeyError(f"unknown traffic class label: {name!r}")
    return _LABEL_BY_KEY[key]


# Tuned trapezoid breakpoints per feature, transcribed at full printed
# precision. Crisp edges and the ipOutDiscards VeryHigh singleton are
# intentional.
_PARTITION_TABLE = {
    "ipOutDiscards": [
        (Term.VERY_LOW, 1, 1, 64.8, 129.1),
        (Term.LOW, 472.55, 536.85, 601.15, 665.45),
        (Term.MEDIUM, 627.93, 692.23, 756.53, 820.83),
        (Term.HIGH, 758.75, 823.05, 887.35, 951.65),
        (Term.VERY_HIGH, 1287, 1287, 1287, 1287),
    ],
    "ipInDiscards": [
        (Term.VERY_LOW, 9, 9, 10.23, 21.78),
        (Term.LOW, 19.33, 21.78, 24.23, 26.68),
        (Term.MEDIUM, 24.23, 32.28, 34.73, 56.78),
        (Term.HIGH, 34.73, 56.78, 58, 58),
    ],
    "icmpOutDestUnreachs": [
        (Term.LOW, 0, 0, 0.58, 10.93),
        (Term.MEDIUM, 0.58, 10.93, 12.08, 22.43),
        (Term.HIGH, 12.08, 22.43, 23, 23),
    ],
    "ifInDiscards": [
        (Term.LOW, 0, 0, 8602.57, 18434.06),
        (Term.MEDIUM, 83567, 93399, 103230, 113062),
        (Term.HIGH, 178195, 188027, 196630, 196630),
    ],
    "ifOutDiscards": [
        (Term.LOW, 0, 0, 8602.57, 18434.06),
        (Term.MEDIUM, 83567, 93399, 103230, 113062),
        (Term.HIGH, 178195, 188027.44, 196630, 196630),
    ],
}


def default_partitions() -> dict[str, Partition]:
    """The built-in tuned partitions for the five features, keyed in
    FEATURE_ORDER. Universe bounds span the outermost breakpoints."""
    out = {}
    for feature in FEATURE_ORDER:
        rows = _PARTITION_TABLE[feature]
        sets = tuple(TrapezoidSet(t, float(a), float(b), float(c), float(d))
                     for t, a, b, c, d in rows)
        lo = min(s.a for s in sets)
        hi = max(s.d for s in sets)
        out[feature] = Partition(feature, (lo, hi), sets)
    return out


# Built-in sample of linguistic rules over the five features (terms follow
# FEATURE_ORDER; consequent Normal -> 0, abnormal -> 1). Rows 6 and 14 are
# duplicates in the published sample and compile to a single rule.
LINGUISTIC_RULE_ROWS = (
    (("Low", "Low", "Very Low", "Very Low", "Low"), "Normal"),
    (("Low", "Low", "Very Low", "Very Low", "Medium"), "Normal"),
    (("Low", "Low", "Very Low", "High", "High"), "Normal"),
    (("Low", "Low", "Medium", "Medium", "Medium"), "Normal"),
    (("Low", "Medium", "Very Low", "Very Low", "Low"), "abnormal"),
    (("Medium", "High", "Very Low", "Very Low", "Low"), "abnormal"),
    (("High", "Low", "Very Low", "Very Low", "Low"), "abnormal"),
    (("High", "High", "Very High", "Very Low", "Low"), "abnormal"),
    (("Medium", "Low", "Very High", "Very Low", "Low"), "Normal"),
    (("Medium", "High", "Very Low", "High", "Medium"), "abnormal"),
    (("Medium", "High", "Medium", "Medium", "High"), "abnormal"),
    (("Medium", "Medium", "Very High", "Very Low", "Low"), "Normal"),
    (("High", "Low", "Medium", "Medium", "Low"), "abnormal"),
    (("Medium", "High", "Very Low", "Very Low", "Low"), "abnormal"),
    (("Low", "High", "Very High", "Very Low", "High"), "abnormal"),
)
