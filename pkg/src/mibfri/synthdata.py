"""Synthetic SNMP-MIB dataset generator.

Produces a counter table with the published schema (34 counters plus a class
column) and the published per-class record counts, for use when the original
capture is not available. Class-conditional feature ranges follow the tuned
partitions so the detection features carry the same kind of structure the
detector was designed around.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from . import mib

# Published per-class record counts (total 4998).
CLASS_COUNTS = {
    "Normal": 600,
    "TCP-SYN": 960,
    "UDP flood": 773,
    "ICMP-ECHO": 632,
    "HTTP flood": 573,
    "Slowloris": 780,
    "Slowpost": 480,
    "Brute Force": 200,
}

# Known abnormal observation in feature order; injected verbatim as one
# Slowpost row so the generated table contains it.
EXAMPLE_ABNORMAL_OBSERVATION = (7270.0, 7270.0, 1287.0, 9.0, 0.0)

# Background ranges for the 29 counters the cleaning stage discards.
_BACKGROUND_RANGES = {
    "ifInOctets": (50_000, 40_000_000),
    "ifOutOctets": (50_000, 40_000_000),
    "ifInUcastPkts": (1_000, 900_000),
    "ifInNUcastPkts": (0, 20_000),
    "ifOutUcastPkts": (1_000, 900_000),
    "ifOutNUcastPkts": (0, 20_000),
    "tcpOutRsts": (0, 5_000),
    "tcpInSegs": (500, 800_000),
    "tcpOutSegs": (500, 800_000),
    "tcpPassiveOpens": (0, 30_000),
    "tcpRetransSegs": (0, 8_000),
    "tcpCurrEstab": (1, 2_000),
    "tcpEstabResets": (0, 3_000),
    "tcpActiveOpens": (0, 30_000),
    "ipInReceives": (1_000, 1_200_000),
    "ipInDelivers": (1_000, 1_200_000),
    "ipOutRequests": (1_000, 1_200_000),
    "ipForwDatagrams": (0, 500_000),
    "ipOutNoRoutes": (0, 200),
    "ipInAddrErrors": (0, 150),
    "icmpInMsgs": (0, 40_000),
    "icmpInDestUnreachs": (0, 2_000),
    "icmpOutMsgs": (0, 40_000),
    "icmpInEchos": (0, 30_000),
    "icmpOutEchoReps": (0, 30_000),
    "udpInDatagrams": (100, 400_000),
    "udpOutDatagrams": (100, 400_000),
    "udpInErrors": (0, 1_500),
    "udpNoPorts": (0, 4_000),
}


def _uniform(rng, lo, hi):
    return int(rng.integers(lo, hi + 1))


def _features_for(label: str, rng) -> tuple[int, int, int, int, int]:
    """Draw (ifOutDiscards, ifInDiscards, ipOutDiscards, ipInDiscards,
    icmpOutDestUnreachs) from the label's regime."""
    low_if = lambda: _uniform(rng, 0, 12_000)
    vl_ipout = lambda: _uniform(rng, 1, 120)
    vl_ipin = lambda: _uniform(rng, 9, 21)
    low_icmp = lambda: _uniform(rng, 0, 10)
    high_if = lambda: _uniform(rng, 175_000, 196_630)
    med_if = lambda: _uniform(rng, 84_000, 113_000)

    if label == "Normal":
        if_out, if_in = low_if(), low_if()
        if rng.random() < 0.04:  # occasional busier routers near the Low edge
            if_in = _uniform(rng, 12_000, 18_000)
        if rng.random() < 0.04:
            if_out = _uniform(rng, 12_000, 18_000)
        return if_out, if_in, vl_ipout(), vl_ipin(), low_icmp()
    if label == "TCP-SYN":
        if_in = high_if() if rng.random() >= 0.08 else _uniform(rng, 120_000, 175_000)
        return low_if(), if_in, vl_ipout(), vl_ipin(), low_icmp()
    if label == "UDP flood":
        if_out = high_if() if rng.random() >= 0.08 else _uniform(rng, 120_000, 175_000)
        return if_out, low_if(), vl_ipout(), vl_ipin(), low_icmp()
    if label == "ICMP-ECHO":
        return med_if(), med_if(), vl_ipout(), vl_ipin(), _uniform(rng, 13, 23)
    if label == "HTTP flood":
        return med_if(), high_if(), vl_ipout(), vl_ipin(), low_icmp()
    if label == "Slowloris":
        if_in = med_if() if rng.random() >= 0.10 else _uniform(rng, 20_000, 83_000)
        return low_if(), if_in, vl_ipout(), vl_ipin(), low_icmp()
    if label == "Slowpost":
        return (_uniform(rng, 3_000, 15_000), _uniform(rng, 3_000, 15_000),
                _uniform(rng, 1_150, 1_287), vl_ipin(), low_icmp())
    if label == "Brute Force":
        return (low_if(), low_if(), _uniform(rng, 630, 820),
                _uniform(rng, 35, 58), _uniform(rng, 11, 22))
    raise ValueError(f"unknown class: {label}")


def generate_rows(seed: int = 7) -> list[dict]:
    """All 4998 rows as dicts keyed by counter name plus 'class', shuffled."""
    rng = np.random.default_rng(seed)
    rows = []
    for label, count in CLASS_COUNTS.items():
        for k in range(count):
            row = {col: _uniform(rng, lo, hi)
                   for col, (lo, hi) in _BACKGROUND_RANGES.items()}
            if label == "Slowpost" and k == 0:
                feats = tuple(int(v) for v in EXAMPLE_ABNORMAL_OBSERVATION)
            else:
                feats = _features_for(label, rng)
            for name, value in zip(mib.FEATURE_ORDER, feats):
                row[name] = value
            row["class"] = label
            rows.append(row)
    order = rng.permutation(len(rows))
    return [rows[i] for i in order]


def write_csv(path, seed: int = 7) -> int:
    """Write the generated table as CSV; returns the row count."""
    rows = generate_rows(seed)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(mib.MIB_COLUMNS) + ["class"])
        for row in rows:
            writer.writerow([row[c] for c in mib.MIB_COLUMNS] + [row["class"]])
    return len(rows)
