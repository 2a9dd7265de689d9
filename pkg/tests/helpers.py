"""Shared oracles and checks used by the unit tests and the acceptance suite."""

from __future__ import annotations

import numpy as np

from sparkle.hankel import _lift_view, unlift_pick
from sparkle.solver import update_i, update_u, update_v, update_x


def complex_grid_prox_l1(z: complex, lam: float, n_radius=400, n_phase=720):
    """Brute-force minimiser of lam |w| + 1/2 |w - z|^2 over a polar grid.

    Independent oracle for the complex soft threshold; returns the grid
    argmin and the grid resolution (radial step, arc step).
    """
    rmax = abs(z) + lam + 0.5
    radii = np.linspace(0.0, rmax, n_radius)
    phases = np.linspace(-np.pi, np.pi, n_phase, endpoint=False)
    w = radii[:, None] * np.exp(1j * phases[None, :])
    objective = lam * np.abs(w) + 0.5 * np.abs(w - z) ** 2
    idx = np.unravel_index(np.argmin(objective), objective.shape)
    dr = rmax / (n_radius - 1)
    darc = abs(z) * (2 * np.pi / n_phase)
    return w[idx], dr + darc


def lagrangian(y, x, i, u, v, p, q, tau, beta, mu):
    """Scaled augmented Lagrangian of the separation problem (oracle form)."""
    hx = _lift_view(np.ascontiguousarray(x), v.shape[0])
    return (
        0.5 * (np.linalg.norm(u) ** 2 + np.linalg.norm(v) ** 2)
        + tau * np.abs(i).sum()
        + beta / 2 * np.linalg.norm(y - x - i + p / beta) ** 2
        + mu / 2 * np.linalg.norm(hx - u @ v.conj().T + q / mu) ** 2
    )


def numeric_block_gradient(block, objective, step=1e-6):
    """Central finite differences of `objective` over every real coordinate
    of the complex array `block`."""
    flat = block.ravel()
    grads = np.empty(2 * flat.size)
    for idx in range(flat.size):
        for comp, delta in enumerate((step, 1j * step)):
            bumped = flat.copy()
            bumped[idx] += delta
            up = objective(bumped.reshape(block.shape))
            bumped[idx] -= 2 * delta
            down = objective(bumped.reshape(block.shape))
            grads[2 * idx + comp] = (up - down) / (2 * step)
    return np.linalg.norm(grads)


def random_solver_state(rng, N=10, p=2):
    """Small random iterate for block-update checks (no zeroed i entries)."""
    n = N // 2 + 1
    m = N - n + 1

    def cvec(size):
        return rng.standard_normal(size) + 1j * rng.standard_normal(size)

    state = {
        "y": cvec(N),
        "i": cvec(N),
        "p": cvec(N),
        "u": cvec((m, p)),
        "v": cvec((n, p)),
        "q": cvec((m, n)),
        "tau": 0.05,
        "beta": 0.7,
        "mu": 0.9,
        "m": m,
        "n": n,
    }
    return state


def check_x_stationarity_average(rng, N=10, p=2, step=1e-6):
    s = random_solver_state(rng, N, p)
    uvh = s["u"] @ s["v"].conj().T
    x_new = update_x(s["y"], s["i"], s["p"], uvh, s["q"], s["beta"], s["mu"], "average")

    def obj(x):
        return lagrangian(s["y"], x, s["i"], s["u"], s["v"], s["p"], s["q"],
                          s["tau"], s["beta"], s["mu"])

    return numeric_block_gradient(x_new, obj, step)


def check_i_stationarity(rng, N=10, p=2, step=1e-6):
    """i block check on an instance where no entry is thresholded to zero,
    keeping the l1 term differentiable along every probed direction."""
    s = random_solver_state(rng, N, p)
    x = s["y"] - s["i"]  # keeps |y - x + p/beta| well away from tau/beta
    i_new = update_i(s["y"], x, s["p"], s["beta"], s["tau"])
    assert np.all(np.abs(i_new) > 10 * step), "instance accidentally sparse"

    def obj(i):
        return lagrangian(s["y"], x, i, s["u"], s["v"], s["p"], s["q"],
                          s["tau"], s["beta"], s["mu"])

    return numeric_block_gradient(i_new, obj, step)


def check_u_stationarity(rng, N=10, p=2, step=1e-6):
    s = random_solver_state(rng, N, p)
    x = s["y"] - s["i"]
    hx = _lift_view(np.ascontiguousarray(x), s["n"])
    u_new = update_u(hx + s["q"] / s["mu"], s["v"], s["mu"])

    def obj(u):
        return lagrangian(s["y"], x, s["i"], u, s["v"], s["p"], s["q"],
                          s["tau"], s["beta"], s["mu"])

    return numeric_block_gradient(u_new, obj, step)


def check_v_stationarity(rng, N=10, p=2, step=1e-6):
    s = random_solver_state(rng, N, p)
    x = s["y"] - s["i"]
    hx = _lift_view(np.ascontiguousarray(x), s["n"])
    v_new = update_v(hx + s["q"] / s["mu"], s["u"], s["mu"])

    def obj(v):
        return lagrangian(s["y"], x, s["i"], s["u"], v, s["p"], s["q"],
                          s["tau"], s["beta"], s["mu"])

    return numeric_block_gradient(v_new, obj, step)


def pick_mode_transcription(y, i, p, uvh, q, beta, mu):
    """Independent straight-line evaluation of the pick-mode x update."""
    g = unlift_pick(uvh - q / mu)
    return (beta * (y - i + p / beta) + mu * g) / (mu + beta)


def tone_matrix(N: int, freqs) -> np.ndarray:
    """Sum of unit complex exponentials at normalised frequencies."""
    k = np.arange(N)
    return sum(np.exp(-2j * np.pi * f * k) for f in freqs)
