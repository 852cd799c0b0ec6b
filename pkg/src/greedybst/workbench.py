"""Trace generators, trace/report files, and weight files.

Traces are single self-describing JSON documents (keys: generator, m, n,
searches) written canonically so load/save round-trips byte-identically.
Reports are flat CSV with a header row; every row carries the run metadata so
reports stay self-describing and diffable.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .model import AccessSequence, WeightAssignment

__all__ = [
    "TraceFile",
    "gen_sequential",
    "gen_bit_reversal",
    "gen_random",
    "save_trace",
    "load_trace",
    "save_weights",
    "load_weights",
    "RunReport",
    "AUDIT_COLUMNS",
]

AUDIT_COLUMNS = [
    "phi_before",
    "phi_after",
    "amortized",
    "bound",
    "stubborn_left",
    "stubborn_right",
]


@dataclass(frozen=True)
class TraceFile:
    """An access sequence plus the metadata that generated it."""

    sequence: AccessSequence
    generator: dict

    @property
    def n(self) -> int:
        return self.sequence.n

    @property
    def m(self) -> int:
        return self.sequence.m


def gen_sequential(n: int) -> TraceFile:
    """The identity sequence 1, 2, ..., n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    seq = AccessSequence(n, tuple(range(1, n + 1)))
    return TraceFile(seq, {"pattern": "sequential", "n": n})


def gen_bit_reversal(height: int, rounds: int) -> TraceFile:
    """Leaves of a complete tree of the given height, in bit-reversed index
    order, repeated for the given number of rounds.

    The universe is n = 2^(height+1) - 1 and the leaves are the odd keys.
    The recommended starting shape is the complete balanced tree.
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    n = 2 ** (height + 1) - 1
    count = 2**height
    one_round = []
    for i in range(count):
        rev = int(format(i, f"0{height}b")[::-1], 2)
        one_round.append(2 * rev + 1)
    seq = AccessSequence(n, tuple(one_round * rounds))
    return TraceFile(
        seq,
        {"pattern": "bitreversal", "height": height, "rounds": rounds, "t0": "balanced"},
    )


def gen_random(
    n: int,
    m: int,
    distribution: str,
    seed: int,
    *,
    theta: float = 1.0,
    width: int = 8,
    reuse: float = 0.9,
) -> TraceFile:
    """Seeded random workloads: uniform, zipf(theta), or a sliding
    working-set window that redraws recent distinct elements with
    probability ``reuse``."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    rng = random.Random(seed)
    meta: dict = {"pattern": distribution, "n": n, "m": m, "seed": seed}
    if distribution == "uniform":
        searches = [rng.randint(1, n) for _ in range(m)]
    elif distribution == "zipf":
        if theta < 0:
            raise ValueError("zipf theta must be >= 0")
        weights = [1.0 / (x**theta) for x in range(1, n + 1)]
        searches = rng.choices(range(1, n + 1), weights=weights, k=m)
        meta["theta"] = theta
    elif distribution == "wswindow":
        if width < 1:
            raise ValueError("window width must be >= 1")
        if not 0.0 <= reuse <= 1.0:
            raise ValueError("reuse probability must be in [0, 1]")
        recent: list[int] = []  # most recent distinct first
        searches = []
        for _ in range(m):
            if recent and rng.random() < reuse:
                s = rng.choice(recent[: min(width, len(recent))])
            else:
                s = rng.randint(1, n)
            if s in recent:
                recent.remove(s)
            recent.insert(0, s)
            del recent[n:]
            searches.append(s)
        meta["width"] = width
        meta["reuse"] = reuse
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    return TraceFile(AccessSequence(n, tuple(searches)), meta)


def _trace_bytes(trace: TraceFile) -> bytes:
    doc = {
        "generator": trace.generator,
        "m": trace.m,
        "n": trace.n,
        "searches": list(trace.sequence.searches),
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def save_trace(trace: TraceFile, path: str | Path) -> None:
    Path(path).write_bytes(_trace_bytes(trace))


def load_trace(path: str | Path) -> TraceFile:
    doc = json.loads(Path(path).read_text())
    seq = AccessSequence(doc["n"], tuple(doc["searches"]))
    if doc["m"] != seq.m:
        raise ValueError(f"trace declares m={doc['m']} but holds {seq.m} searches")
    return TraceFile(seq, doc.get("generator", {}))


def save_weights(weights: WeightAssignment, path: str | Path) -> None:
    """Two-column text: element, then the weight as p/q."""
    lines = [f"{x} {weights.w(x)}" for x in range(1, weights.n + 1)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_weights(path: str | Path, n: int | None = None) -> WeightAssignment:
    mapping: dict[int, Fraction] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'element p/q'")
        mapping[int(parts[0])] = Fraction(parts[1])
    if n is None:
        n = max(mapping) if mapping else 0
    return WeightAssignment.from_map(n, mapping)


@dataclass
class RunReport:
    """Per-search cost rows (plus audit columns when present) for one run."""

    algo: str
    trace: str
    n: int
    m: int
    rows: list[dict] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(r["cost"] for r in self.rows)

    def columns(self) -> list[str]:
        base = ["algo", "trace", "n", "m", "i", "s_i", "cost"]
        if self.rows and "amortized" in self.rows[0]:
            base += AUDIT_COLUMNS
        return base

    def save(self, path: str | Path) -> None:
        cols = self.columns()
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=cols)
            writer.writeheader()
            for row in self.rows:
                out = {"algo": self.algo, "trace": self.trace, "n": self.n, "m": self.m}
                out.update({k: row[k] for k in cols if k in row})
                writer.writerow(out)

    @classmethod
    def load(cls, path: str | Path) -> "RunReport":
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            rows = list(reader)
        if not rows:
            raise ValueError(f"{path}: empty report")
        first = rows[0]
        report = cls(
            algo=first["algo"],
            trace=first["trace"],
            n=int(first["n"]),
            m=int(first["m"]),
        )
        for raw in rows:
            row = {
                "i": int(raw["i"]),
                "s_i": int(raw["s_i"]),
                "cost": int(raw["cost"]),
            }
            for col in AUDIT_COLUMNS:
                if col in raw and raw[col] is not None and raw[col] != "":
                    row[col] = raw[col] if col.startswith("stubborn") else int(raw[col])
                elif col in ("stubborn_left", "stubborn_right") and col in raw:
                    row[col] = ""
            report.rows.append(row)
        return report

    @classmethod
    def from_costs(
        cls, algo: str, trace: str, sequence: AccessSequence, costs: Iterable[int]
    ) -> "RunReport":
        report = cls(algo=algo, trace=trace, n=sequence.n, m=sequence.m)
        for i, (s, c) in enumerate(zip(sequence.searches, costs), start=1):
            report.rows.append({"i": i, "s_i": s, "cost": c})
        return report
