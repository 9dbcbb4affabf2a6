"""Input validation helpers shared by the estimators and geometry ops."""

from __future__ import annotations

import numpy as np

_FLOAT_DTYPES = (np.float32, np.float64)


def as_float_array(x, name: str = "X", ndim: int | None = None) -> np.ndarray:
    """Coerce to a float32/float64 ndarray, preserving an existing float dtype."""
    arr = np.asarray(x)
    if arr.dtype not in _FLOAT_DTYPES:
        arr = arr.astype(np.float64)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    return arr


def check_unit_interval(arr, name: str = "value"):
    a = np.asarray(arr)
    if a.size and (np.nanmin(a) < 0.0 or np.nanmax(a) > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def check_index(i: int, n: int, name: str = "index") -> int:
    i = int(i)
    if not 0 <= i < n:
        raise IndexError(f"{name} {i} out of range [0, {n})")
    return i
