"""Robust PCA baseline on the lifted measurement.

The comparison method: lift y once to Y = H(y), split Y into a low-rank
part X (nuclear norm, via singular value thresholding) and a sparse part
T (l1, via soft thresholding) inside an augmented-Lagrangian loop

    X <- SVT_{1/mu}(Y - T + Q/mu)
    T <- S_{tau/mu}(Y - X + Q/mu)
    Q <- Q + mu (Y - X - T)

and read the signals back from the Hankel factors by picking the first
column and last row.  There is deliberately no per-iteration
re-Hankelisation: the anti-diagonal weighting this baseline applies to
the sparse part is exactly the behaviour the main solver avoids, so the
baseline must keep it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .hankel import HankelShape, _lift_view, default_shape, unlift_pick
from .solver import soft_threshold
from .validation import as_complex_vector, require_finite

__all__ = ["RpcaParams", "RpcaResult", "svt", "rpca_solve"]


@dataclass(frozen=True)
class RpcaParams:
    """tau defaults to 1 / sqrt(max(m, n)) when left as None."""

    tau: float | None = None
    mu: float = 0.05
    delta: float = 1e-6
    max_iters: int = 500

    def __post_init__(self):
        if self.tau is not None and not self.tau > 0:
            raise ValueError("tau must be positive")
        if not self.mu > 0 or not self.delta > 0:
            raise ValueError("mu and delta must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class RpcaResult:
    signal: np.ndarray
    interference: np.ndarray
    iterations: int
    rel_error_trace: np.ndarray
    converged: bool
    wall_time: float


def svt(M: np.ndarray, threshold: float) -> np.ndarray:
    """Singular value thresholding, the proximal operator of
    threshold * ||.||_*.  Shrinks singular values by `threshold` and
    never increases rank."""
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    u, s, vh = np.linalg.svd(np.asarray(M, dtype=np.complex128), full_matrices=False)
    s = np.maximum(s - threshold, 0.0)
    keep = s > 0
    return (u[:, keep] * s[keep]) @ vh[keep]


def rpca_solve(y, shape: HankelShape | None = None,
               params: RpcaParams | None = None) -> RpcaResult:
    """Split the lifted measurement and unpick the separated signals."""
    yv = require_finite(as_complex_vector(y, "y"), "y")
    params = params or RpcaParams()
    shape = shape or default_shape(yv.size)
    if shape.N != yv.size:
        raise ValueError(f"shape N={shape.N} does not match signal length {yv.size}")
    tau = params.tau if params.tau is not None else 1.0 / math.sqrt(max(shape.m, shape.n))
    Y = _lift_view(yv, shape.n)
    y_norm = float(np.linalg.norm(Y))
    if y_norm == 0.0:
        zero = np.zeros(yv.size, dtype=np.complex128)
        return RpcaResult(zero, zero.copy(), 0, np.array([]), True, 0.0)

    t_start = time.perf_counter()
    mu = params.mu
    X = np.zeros((shape.m, shape.n), dtype=np.complex128)
    T = np.zeros_like(X)
    Q = np.zeros_like(X)
    trace = []
    k = 0
    while True:
        k += 1
        X = svt(Y - T + Q / mu, 1.0 / mu)
        T = soft_threshold(Y - X + Q / mu, tau / mu)
        R = Y - X - T
        Q = Q + mu * R
        rel = float(np.linalg.norm(R)) / y_norm
        trace.append(rel)
        if rel <= params.delta or k >= params.max_iters:
            break

    wall = time.perf_counter() - t_start
    return RpcaResult(
        signal=unlift_pick(X),
        interference=unlift_pick(T),
        iterations=k,
        rel_error_trace=np.asarray(trace),
        converged=trace[-1] <= params.delta,
        wall_time=wall,
    )
