"""Input validation helpers shared by the library, estimators, and loaders."""

from __future__ import annotations

import numpy as np

from .errors import MalformedInput


def as_float_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce to a C-contiguous 2-D float32 matrix with finite entries."""
    a = np.ascontiguousarray(X, dtype=np.float32)
    if a.ndim != 2:
        raise MalformedInput(f"{name} must be 2-D, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise MalformedInput(f"{name} contains NaN or Inf")
    return a


def as_index_array(idx, num_nodes: int, name: str = "idx") -> np.ndarray:
    """Coerce to a 1-D int64 index array and range-check against ``num_nodes``."""
    a = np.asarray(idx, dtype=np.int64).reshape(-1)
    if a.size and (a.min() < 0 or a.max() >= num_nodes):
        raise IndexError(
            f"{name} has entries outside [0, {num_nodes}): "
            f"range [{a.min()}, {a.max()}]"
        )
    return a


def as_label_array(y, name: str = "y") -> np.ndarray:
    """Coerce to a 1-D int64 label array."""
    a = np.asarray(y)
    if a.ndim != 1:
        raise MalformedInput(f"{name} must be 1-D, got shape {a.shape}")
    out = a.astype(np.int64)
    if a.dtype.kind == "f" and not np.array_equal(out, a):
        raise MalformedInput(f"{name} has non-integer labels")
    return out


def is_binary(X: np.ndarray) -> bool:
    """True when every entry is exactly 0.0 or 1.0."""
    return bool(np.logical_or(X == 0, X == 1).all())
