"""Small input-validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def as_float_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce to a finite 2-d float array."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_float_vector(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_label_vector(y, name: str = "y") -> np.ndarray:
    """Coerce to a 1-d integer label array; rejects fractional values."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError(f"{name} must be non-empty")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or not np.all(arr == np.round(arr)):
            raise ValueError(f"{name} labels must be integer-valued")
    elif arr.dtype.kind not in ("i", "u", "b"):
        raise ValueError(f"{name} labels must be integers, got dtype {arr.dtype}")
    return arr.astype(int)


def check_consistent_length(a: np.ndarray, b: np.ndarray, names: str = "X, y") -> None:
    if len(a) != len(b):
        raise ValueError(f"{names} have inconsistent lengths: {len(a)} vs {len(b)}")


def check_binary_labels(y: np.ndarray, name: str = "y") -> None:
    extra = set(np.unique(y)) - {0, 1}
    if extra:
        raise ValueError(f"{name} must contain only binary labels 0/1, found {sorted(extra)}")
