"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def as_complex_vector(x, name: str = "signal") -> np.ndarray:
    """Coerce `x` (array-like or ComplexSignal) to a 1-D complex128 array."""
    arr = np.asarray(getattr(x, "samples", x), dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    return arr


def require_finite(arr: np.ndarray, name: str = "signal") -> np.ndarray:
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite samples")
    return arr


def as_signal_matrix(X, name: str = "X") -> tuple[np.ndarray, bool]:
    """Coerce to a 2-D (n_sweeps, n_samples) complex array.

    Returns the matrix and a flag telling whether the input was 1-D, so
    callers can mirror the input shape on output.
    """
    arr = np.asarray(X, dtype=np.complex128)
    if arr.ndim == 1:
        return arr[np.newaxis, :], True
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got shape {arr.shape}")
    if arr.shape[1] == 0:
        raise ValueError(f"{name} has zero-length rows")
    return arr, False
