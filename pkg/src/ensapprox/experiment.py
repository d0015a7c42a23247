"""Experiment runner: many seeded unit copies, three combiners, one report.

The protocol trains n copies of the logistic unit that differ only in
their seed (optionally also in a bootstrap resample of the training
split), then compares three ways of using them: the single copy that
validates best, the plain majority vote, and a stacked combiner trained
on the copies' outputs over a held-out stacking split so it never sees
the units' own training data.  Metric values are quantized to 6
significant digits before ranking so that a serialized report is exactly
reproducible and its ranks can be recomputed from its own metrics.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .datasets import SYNTHETIC_KINDS, Dataset, gen_synthetic, load_csv_dataset
from .ensemble import StackedCombiner, LogisticUnit
from .metrics import METRIC_ORDER, MetricsReport, RankedTable, compute_metrics, rank_methods

KNOWN_METHODS = ("single-best", "majority-vote", "stacked")
MAX_INSTANCES = 100_000  # desk-scale cap so experiments stay interactive


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_kind: str = "monomial"  # monomial | parity | blobs | csv
    dataset_path: Optional[str] = None
    label_column: Optional[str] = None
    dimension: int = 4
    count: int = 2000
    noise_rate: float = 0.1
    n_copies: int = 50
    unit_epochs: int = 300
    unit_learning_rate: float = 1.0
    combiner_hidden: Optional[tuple[int, ...]] = None
    combiner_epochs: int = 300
    combiner_learning_rate: float = 1.0
    methods: tuple[str, ...] = KNOWN_METHODS
    train_fraction: float = 0.6
    stack_fraction: float = 0.2
    bootstrap: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.dataset_kind not in SYNTHETIC_KINDS + ("csv",):
            raise ValueError(f"unknown dataset_kind {self.dataset_kind!r}")
        if self.dataset_kind == "csv" and not (self.dataset_path and self.label_column):
            raise ValueError("csv datasets need dataset_path and label_column")
        if self.n_copies < 1:
            raise ValueError("n_copies must be >= 1")
        if not 1 <= self.count <= MAX_INSTANCES:
            raise ValueError(f"count must be in 1..{MAX_INSTANCES}")
        if not 0 < self.train_fraction < 1 or not 0 < self.stack_fraction < 1:
            raise ValueError("split fractions must lie in (0, 1)")
        if self.train_fraction + self.stack_fraction >= 1:
            raise ValueError("train_fraction + stack_fraction must leave room for a test split")
        unknown = set(self.methods) - set(KNOWN_METHODS)
        if unknown or not self.methods:
            raise ValueError(f"methods must be a non-empty subset of {KNOWN_METHODS}")
        if self.combiner_hidden is not None:
            object.__setattr__(self, "combiner_hidden", tuple(int(h) for h in self.combiner_hidden))
        object.__setattr__(self, "methods", tuple(self.methods))

    def as_dict(self) -> dict:
        doc = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = list(value)
            doc[f.name] = value
        return doc


@dataclass
class ExperimentReport:
    config: dict
    methods: dict[str, MetricsReport]
    ranks: RankedTable
    metadata: dict
    durations: dict = field(default_factory=dict, compare=False)


def load_config(path: str) -> ExperimentConfig:
    """Read a flat JSON config; every key must name a config field."""
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}; known keys are {sorted(known)}")
    for key in ("methods", "combiner_hidden"):
        if isinstance(doc.get(key), list):
            doc[key] = tuple(doc[key])
    return ExperimentConfig(**doc)


def split_indices(n: int, train_fraction: float, stack_fraction: float, seed: int):
    """Shuffle 0..n-1 into disjoint train / stack / test index arrays."""
    perm = np.random.default_rng(seed).permutation(n)
    n_train = int(train_fraction * n)
    n_stack = int(stack_fraction * n)
    train, stack, test = perm[:n_train], perm[n_train : n_train + n_stack], perm[n_train + n_stack :]
    if min(len(train), len(stack), len(test)) == 0:
        raise ValueError(f"splits of {n} instances leave an empty part; adjust fractions")
    return train, stack, test


def _load_dataset(config: ExperimentConfig) -> Dataset:
    if config.dataset_kind == "csv":
        return load_csv_dataset(config.dataset_path, config.label_column)
    return gen_synthetic(
        config.dataset_kind, config.dimension, config.count, config.noise_rate, config.seed
    )


def _sigfig6(value: float) -> float:
    return float(f"{value:.6g}")


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    t_start = time.perf_counter()
    data = _load_dataset(config)
    if not data.is_binary:
        raise ValueError("the experiment protocol trains binary logistic units; labels must be 0/1")
    train, stack, test = split_indices(
        data.n_instances, config.train_fraction, config.stack_fraction, config.seed
    )
    states = np.random.SeedSequence(config.seed).generate_state(config.n_copies + 1)
    copy_seeds = [int(s) for s in states[: config.n_copies]]
    combiner_seed = int(states[-1])

    t_units = time.perf_counter()
    units = []
    for copy_seed in copy_seeds:
        rows = train
        if config.bootstrap:
            resampler = np.random.default_rng([copy_seed, 1])
            rows = train[resampler.integers(0, len(train), len(train))]
        unit = LogisticUnit(
            epochs=config.unit_epochs,
            learning_rate=config.unit_learning_rate,
            seed=copy_seed,
        ).fit(data.X[rows], data.y[rows])
        units.append(unit)
    unit_time = time.perf_counter() - t_units

    def outputs(rows) -> np.ndarray:
        return np.stack([u.predict_proba(data.X[rows])[:, 1] for u in units], axis=1)

    P_stack, P_test = outputs(stack), outputs(test)
    y_stack, y_test = data.y[stack], data.y[test]

    predictions: dict[str, np.ndarray] = {}
    combiner_time = 0.0
    if "single-best" in config.methods:
        stack_acc = ((P_stack >= 0.5).astype(int) == y_stack[:, None]).mean(axis=0)
        best = int(np.argmax(stack_acc))
        predictions["single-best"] = (P_test[:, best] >= 0.5).astype(int)
    if "majority-vote" in config.methods:
        votes = (P_test >= 0.5).astype(int)
        # strict majority of ones, so an even-vote tie falls to label 0
        predictions["majority-vote"] = (2 * votes.sum(axis=1) > config.n_copies).astype(int)
    if "stacked" in config.methods:
        t_comb = time.perf_counter()
        combiner = StackedCombiner(
            hidden=config.combiner_hidden,
            epochs=config.combiner_epochs,
            learning_rate=config.combiner_learning_rate,
            seed=combiner_seed,
        ).fit(P_stack, y_stack)
        combiner_time = time.perf_counter() - t_comb
        predictions["stacked"] = combiner.predict(P_test)

    methods: dict[str, MetricsReport] = {}
    for name in config.methods:
        raw = compute_metrics(predictions[name], y_test)
        methods[name] = MetricsReport(**{k: _sigfig6(v) for k, v in raw.as_dict().items()})
    ranks = rank_methods(methods)
    # quantize the rank averages too, so the in-memory report equals its
    # serialized-then-parsed self
    ranks = RankedTable(
        methods=ranks.methods,
        per_metric=ranks.per_metric,
        average={m: _sigfig6(v) for m, v in ranks.average.items()},
    )
    metadata = {
        "dataset": {
            "kind": config.dataset_kind,
            "instances": int(data.n_instances),
            "dimension": int(data.dimension),
            "labels": list(data.labels),
        },
        "split_sizes": {"train": len(train), "stack": len(stack), "test": len(test)},
        "unit_count": config.n_copies,
        "copy_seeds": copy_seeds,
        "combiner_seed": combiner_seed,
    }
    durations = {
        "unit_training": unit_time,
        "combiner_training": combiner_time,
        "total": time.perf_counter() - t_start,
    }
    return ExperimentReport(
        config=config.as_dict(),
        methods=methods,
        ranks=ranks,
        metadata=metadata,
        durations=durations,
    )


def _quantized(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _sigfig6(obj)
    if isinstance(obj, dict):
        return {k: _quantized(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_quantized(v) for v in obj]
    return obj


def render_json(doc) -> str:
    """Serialize with stable key order and floats at 6 significant digits."""
    return json.dumps(_quantized(doc), indent=2) + "\n"


def report_document(report: ExperimentReport, include_timing: bool = False) -> dict:
    doc = {
        "config": report.config,
        "methods": {name: r.as_dict() for name, r in report.methods.items()},
        "ranks": {
            "methods": list(report.ranks.methods),
            "per_metric": {m: dict(report.ranks.per_metric[m]) for m in METRIC_ORDER},
            "average": dict(report.ranks.average),
        },
        "metadata": report.metadata,
    }
    if include_timing:
        doc["durations"] = report.durations
    return doc


def emit_report(
    report: ExperimentReport,
    format: str = "json",
    path: Optional[str] = None,
    include_timing: bool = False,
) -> str:
    """Render a report to JSON or CSV, optionally writing it to a file.

    Wall-clock durations are left out unless explicitly requested: a report
    for a fixed seed is otherwise byte-identical across runs.
    """
    if format == "json":
        text = render_json(report_document(report, include_timing))
    elif format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = (
            ["method"]
            + list(METRIC_ORDER)
            + [f"rank_{m}" for m in METRIC_ORDER]
            + ["avg_rank"]
        )
        writer.writerow(header)
        for name, metrics in report.methods.items():
            row = [name]
            row += [f"{getattr(metrics, m):.6g}" for m in METRIC_ORDER]
            row += [report.ranks.per_metric[m][name] for m in METRIC_ORDER]
            row.append(f"{report.ranks.average[name]:.6g}")
            writer.writerow(row)
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown report format {format!r}; choose json or csv")
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def parse_report(path: str) -> ExperimentReport:
    """Rebuild a report from its JSON serialization (CSV is one-way)."""
    with open(path) as fh:
        doc = json.load(fh)
    try:
        methods = {name: MetricsReport(**vals) for name, vals in doc["methods"].items()}
        ranks = RankedTable(
            methods=tuple(doc["ranks"]["methods"]),
            per_metric={m: dict(v) for m, v in doc["ranks"]["per_metric"].items()},
            average=dict(doc["ranks"]["average"]),
        )
        return ExperimentReport(
            config=doc["config"],
            methods=methods,
            ranks=ranks,
            metadata=doc["metadata"],
        )
    except (KeyError, TypeError) as err:
        raise ValueError(f"{path}: not a valid report document ({err})") from None
