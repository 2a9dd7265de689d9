"""Hankel lifting geometry and the associated linear operators.

A length-N vector v lifts to an m x n matrix with constant anti-diagonals,
M[p, q] = v[p + q], where N = m + n - 1.  A sum of M distinct complex
exponentials lifts to a matrix of rank M (for m, n > M), which is what the
solver exploits.

Three ways back from matrix to vector are provided:

* ``unlift_pick``    -- first column, then last row (skipping its first
  entry).  A left inverse of ``lift``; on non-Hankel input it simply reads
  those entries.
* ``unlift_average`` -- mean over each anti-diagonal.  This is the
  Moore-Penrose pseudoinverse of the lifting map and agrees with
  ``unlift_pick`` on exact Hankel matrices.
* ``adjoint``        -- sum over each anti-diagonal, satisfying
  <M, lift(v)> = <adjoint(M), v> for all M, v.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .validation import as_complex_vector

__all__ = [
    "HankelShape",
    "default_shape",
    "lift",
    "unlift_pick",
    "unlift_average",
    "adjoint",
    "anti_diagonal_counts",
]


@dataclass(frozen=True)
class HankelShape:
    """Lifting geometry: an m x n matrix built from a length-N vector."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"Hankel shape needs m, n >= 2, got {self.m} x {self.n}")

    @property
    def N(self) -> int:
        return self.m + self.n - 1


def default_shape(N: int) -> HankelShape:
    """Near-square shape for a length-N vector: n = floor(N/2) + 1.

    Maximises the admissible rank margin; any other shape with
    m + n - 1 = N may be passed explicitly instead.
    """
    n = N // 2 + 1
    m = N - n + 1
    return HankelShape(m=m, n=n)


def _lift_view(v: np.ndarray, n: int) -> np.ndarray:
    """Zero-copy Hankel view of v with n columns (internal, read-only use)."""
    return sliding_window_view(v, n)


def lift(v, shape: HankelShape) -> np.ndarray:
    """Lift a length-N vector to the m x n Hankel matrix M[p, q] = v[p + q]."""
    arr = as_complex_vector(v, "v")
    if arr.size != shape.N:
        raise ValueError(f"vector length {arr.size} does not match shape N={shape.N}")
    return _lift_view(arr, shape.n).copy()


def unlift_pick(M: np.ndarray) -> np.ndarray:
    """First column, then last row without its first entry (length m + n - 1)."""
    M = np.asarray(M)
    return np.concatenate([M[:, 0], M[-1, 1:]])


def anti_diagonal_counts(shape: HankelShape) -> np.ndarray:
    """Number of entries on each anti-diagonal k = p + q, k = 0 .. N-1."""
    k = np.arange(shape.N)
    return np.minimum.reduce(
        [k + 1, shape.N - k, np.full_like(k, min(shape.m, shape.n))]
    ).astype(np.float64)


def _anti_diagonal_index(m: int, n: int) -> np.ndarray:
    return (np.arange(m)[:, None] + np.arange(n)[None, :]).ravel()


def adjoint(M: np.ndarray) -> np.ndarray:
    """Anti-diagonal sums: the adjoint of ``lift`` under the Frobenius inner product."""
    M = np.asarray(M, dtype=np.complex128)
    m, n = M.shape
    idx = _anti_diagonal_index(m, n)
    re = np.bincount(idx, weights=M.real.ravel(), minlength=m + n - 1)
    im = np.bincount(idx, weights=M.imag.ravel(), minlength=m + n - 1)
    return re + 1j * im


def unlift_average(M: np.ndarray) -> np.ndarray:
    """Anti-diagonal means: least-squares pseudoinverse of the lifting map."""
    M = np.asarray(M, dtype=np.complex128)
    m, n = M.shape
    k = np.arange(m + n - 1)
    counts = np.minimum.reduce([k + 1, m + n - 1 - k, np.full_like(k, min(m, n))])
    return adjoint(M) / counts
