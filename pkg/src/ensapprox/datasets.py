"""Datasets: the shared container, a CSV loader, and synthetic generators."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import validation

SYNTHETIC_KINDS = ("monomial", "parity", "blobs")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix, integer labels, and the declared label space."""

    X: np.ndarray
    y: np.ndarray
    labels: tuple[int, ...]

    def __post_init__(self):
        X = validation.as_float_matrix(self.X, "X")
        y = validation.as_label_vector(self.y, "y")
        validation.check_consistent_length(X, y)
        extra = set(np.unique(y)) - set(self.labels)
        if extra:
            raise ValueError(f"labels {sorted(extra)} fall outside the declared space {self.labels}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "labels", tuple(int(l) for l in self.labels))

    @property
    def n_instances(self) -> int:
        return self.X.shape[0]

    @property
    def dimension(self) -> int:
        return self.X.shape[1]

    @property
    def is_binary(self) -> bool:
        return set(self.labels) <= {0, 1}


def load_csv_dataset(path: str, label_column: str) -> Dataset:
    """Load a header-row CSV of numeric features plus one label column.

    The label space is inferred from the distinct label values.  Parse
    failures report the offending row and column by name; rows are counted
    from 1 with the header as row 1.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = rows[0]
    if label_column not in header:
        raise ValueError(f"{path}: no column named {label_column!r}; columns are {header}")
    label_idx = header.index(label_column)
    feature_names = [h for i, h in enumerate(header) if i != label_idx]
    data = rows[1:]
    if not data:
        raise ValueError(f"{path}: no data rows")
    features = []
    labels = []
    for row_no, row in enumerate(data, start=2):
        if len(row) != len(header):
            raise ValueError(f"{path}: row {row_no} has {len(row)} cells, header has {len(header)}")
        feat = []
        for idx, cell in enumerate(row):
            name = header[idx]
            try:
                value = float(cell)
            except ValueError:
                raise ValueError(
                    f"{path}: non-numeric value {cell!r} at row {row_no}, column {name!r}"
                ) from None
            if idx == label_idx:
                if value != int(value):
                    raise ValueError(
                        f"{path}: non-integer label {cell!r} at row {row_no}, column {name!r}"
                    )
                labels.append(int(value))
            else:
                feat.append(value)
        if not feat:
            raise ValueError(f"{path}: no feature columns besides the label")
        features.append(feat)
    y = np.array(labels, dtype=int)
    return Dataset(X=np.array(features), y=y, labels=tuple(sorted(set(y.tolist()))))


def gen_synthetic(kind: str, d: int, count: int, noise_rate: float = 0.0, seed: int = 0) -> Dataset:
    """Deterministic synthetic tasks keyed by seed.

    monomial and parity sample cube points uniformly, label them with the
    full product or the XOR of the bits, and flip each label independently
    with probability noise_rate.  blobs draws two d-dimensional Gaussian
    clusters (centers at the all-zeros and all-ones points, unit spread)
    with no label flipping.
    """
    if kind not in SYNTHETIC_KINDS:
        raise ValueError(f"unknown synthetic kind {kind!r}; choose from {SYNTHETIC_KINDS}")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 <= noise_rate < 0.5:
        raise ValueError(f"noise_rate must be in [0, 0.5), got {noise_rate}")
    rng = np.random.default_rng(seed)
    if kind == "blobs":
        y = rng.integers(0, 2, count)
        X = y[:, None] + rng.normal(0.0, 1.0, (count, d))
        return Dataset(X=X, y=y, labels=(0, 1))
    X = rng.integers(0, 2, (count, d)).astype(float)
    if kind == "monomial":
        base = (X.sum(axis=1) == d).astype(int)
    else:
        base = (X.sum(axis=1).astype(int)) % 2
    flip = rng.random(count) < noise_rate
    y = np.where(flip, 1 - base, base)
    return Dataset(X=X, y=y, labels=(0, 1))
