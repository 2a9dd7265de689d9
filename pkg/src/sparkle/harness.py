"""Run orchestration: simulation bundles, mitigation dispatch, Monte Carlo
batches and the interference-duration sweep.

All randomness flows from the scenario seed: Monte Carlo run r draws its
noise with seed base_seed + r, so adding runs never perturbs earlier ones,
and aggregate tables are byte-reproducible for a fixed (config, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import scenario as sc
from .hankel import default_shape
from .io import fmt, scenario_digest
from .metrics import corr_coeff, sinr
from .rpca import RpcaParams, RpcaResult, rpca_solve
from .solver import SolverParams, SolverResult, solve

__all__ = [
    "METHODS",
    "RunReport",
    "SimulationBundle",
    "simulate_components",
    "solver_params_from_config",
    "rpca_params_from_config",
    "mitigate_samples",
    "evaluate_pair",
    "montecarlo_rows",
    "rows_to_csv",
    "MONTECARLO_COLUMNS",
    "DURATION_COLUMNS",
    "duration_scenario",
    "duration_rows",
]

METHODS = ("sparkle", "rpca")


@dataclass(frozen=True)
class RunReport:
    """Serializable record of one mitigation run."""

    scenario_digest: str
    method: str
    iterations: int
    wall_time_s: float
    converged: bool
    sinr0_db: float | None = None
    sinr_db: float | None = None
    rho_abs: float | None = None
    rho_phase_rad: float | None = None

    def to_dict(self) -> dict:
        out = {
            "scenario_digest": self.scenario_digest,
            "method": self.method,
            "iterations": self.iterations,
            "wall_time_s": self.wall_time_s,
            "converged": self.converged,
        }
        for key in ("sinr0_db", "sinr_db", "rho_abs", "rho_phase_rad"):
            value = getattr(self, key)
            if value is not None:
                out[key] = "+inf" if isinstance(value, float) and math.isinf(value) else value
        return out


@dataclass(frozen=True)
class SimulationBundle:
    reference: sc.ComplexSignal
    interference: sc.ComplexSignal
    noise: sc.ComplexSignal
    measurement: sc.ComplexSignal
    derived: dict


def simulate_components(scenario: sc.FmcwScenario) -> SimulationBundle:
    """Synthesize all scenario components and the derived quantities."""
    x = sc.synth_beat_signal(scenario)
    i = sc.total_interference(scenario)
    if np.linalg.norm(x.samples) > 0:
        n = sc.noise_for_snr(x, scenario.snr_db, scenario.seed)
    else:
        n = sc.ComplexSignal(np.zeros(scenario.n_samples), scenario.sampling_rate)
    y = sc.compose_measurement(x, i, n)
    corruption = i.samples + n.samples
    sinr0 = (
        float(20 * np.log10(np.linalg.norm(x.samples) / np.linalg.norm(corruption)))
        if np.linalg.norm(x.samples) > 0 and np.linalg.norm(corruption) > 0
        else None
    )
    shape = default_shape(scenario.n_samples)
    derived = {
        "scenario_digest": scenario_digest(scenario),
        "slope_hz_per_s": scenario.slope,
        "n_samples": scenario.n_samples,
        "beat_frequencies_hz": list(scenario.beat_frequencies),
        "contaminated_fraction": sc.contaminated_fraction(scenario),
        "sinr0_db": sinr0,
        "hankel_shape": [shape.m, shape.n],
    }
    return SimulationBundle(x, i, n, y, derived)


def solver_params_from_config(block: dict, n_samples: int | None = None) -> SolverParams:
    """SolverParams from a config 'solver' block (absent keys -> defaults)."""
    known = {
        "tau", "beta0", "mu0", "k_beta", "k_mu", "growth_interval",
        "delta", "rank", "unlift_mode", "max_iters", "seed", "svd_init",
    }
    kwargs = {k: v for k, v in block.items() if k in known}
    if n_samples is not None:
        kwargs["shape"] = default_shape(n_samples)
    return SolverParams(**kwargs)


def rpca_params_from_config(block: dict) -> RpcaParams:
    known = {"tau", "mu", "delta", "max_iters"}
    return RpcaParams(**{k: v for k, v in block.items() if k in known})


def mitigate_samples(
    samples: np.ndarray,
    method: str,
    solver_params: SolverParams | None = None,
    rpca_params: RpcaParams | None = None,
) -> SolverResult | RpcaResult:
    if method == "sparkle":
        return solve(samples, solver_params)
    if method == "rpca":
        return rpca_solve(samples, default_shape(len(samples)), rpca_params)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def evaluate_pair(reference: np.ndarray, recovered: np.ndarray) -> dict:
    """SINR and correlation of a recovered signal against its reference."""
    value = sinr(reference, recovered, mode="post")
    rho = corr_coeff(reference, recovered)
    return {
        "sinr_db": "+inf" if math.isinf(value) else value,
        "rho_abs": abs(rho),
        "rho_phase_rad": float(np.angle(rho)),
    }


MONTECARLO_COLUMNS = (
    "sinr0_db",
    "method",
    "runs",
    "mean_sinr_db",
    "mean_rho_abs",
    "mean_rho_phase_rad",
    "mean_iterations",
)

DURATION_COLUMNS = (
    "duration_fraction",
    "actual_fraction",
    "sinr0_db",
    "method",
    "runs",
    "mean_sinr_db",
    "mean_rho_abs",
)


def _mc_single(scenario, x, i_unit, level, method, run, base_seed,
               solver_params, rpca_params):
    noise = sc.noise_for_snr(x, scenario.snr_db, base_seed + run)
    alpha = sc.scale_interference_to_sinr0(x, i_unit, noise, level)
    y = x.samples + alpha * i_unit.samples + noise.samples
    result = mitigate_samples(y, method, solver_params, rpca_params)
    rho = corr_coeff(x.samples, result.signal)
    return {
        "sinr_db": sinr(x.samples, result.signal, mode="post"),
        "rho_abs": abs(rho),
        "rho_phase_rad": float(np.angle(rho)),
        "iterations": result.iterations,
    }


def montecarlo_rows(
    scenario: sc.FmcwScenario,
    runs: int,
    sinr0_list,
    methods=METHODS,
    solver_params: SolverParams | None = None,
    rpca_params: RpcaParams | None = None,
    base_seed: int | None = None,
) -> list[dict]:
    """Seeded Monte Carlo batch, aggregated to per-(level, method) means.

    Run r redraws the noise with seed base_seed + r and rescales the
    scenario interference to the requested pre-mitigation SINR via the
    closed-form scale factor.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    for method in methods:
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
    base_seed = scenario.seed if base_seed is None else base_seed
    x = sc.synth_beat_signal(scenario)
    i_unit = sc.total_interference(scenario)
    rows = []
    for level in sorted(sinr0_list):
        for method in sorted(methods):
            singles = [
                _mc_single(scenario, x, i_unit, level, method, r, base_seed,
                           solver_params, rpca_params)
                for r in range(runs)
            ]
            rows.append(
                {
                    "sinr0_db": level,
                    "method": method,
                    "runs": runs,
                    "mean_sinr_db": float(np.mean([s["sinr_db"] for s in singles])),
                    "mean_rho_abs": float(np.mean([s["rho_abs"] for s in singles])),
                    "mean_rho_phase_rad": float(np.mean([s["rho_phase_rad"] for s in singles])),
                    "mean_iterations": float(np.mean([s["iterations"] for s in singles])),
                }
            )
    return rows


def rows_to_csv(rows, columns) -> str:
    """Fixed-column CSV with 17-significant-digit floats (byte-stable)."""
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            value = row[col]
            cells.append(fmt(value) if isinstance(value, float) else str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def duration_scenario(base: sc.FmcwScenario, fraction: float) -> sc.FmcwScenario:
    """Variant of `base` whose bursts cover `fraction` of the sweep.

    The distinct interferer slope multiples are rescaled about 1 so the
    total gated duration hits the requested fraction, and the bursts are
    respaced evenly inside the sweep (no clipping, no overlap).  Burst
    amplitudes are reset to 1; strength is set per run via the SINR0
    scale factor.
    """
    if not 0 < fraction < 1:
        raise ValueError("fraction must lie in (0, 1)")
    multiples = []
    for spec in base.interferers:
        if spec.slope_multiple not in multiples:
            multiples.append(spec.slope_multiple)
    if not multiples:
        raise ValueError("base scenario has no interferers")
    slope = abs(base.slope)
    base_total = sum(
        2 * base.lpf_cutoff / (abs(mult - 1) * slope) for mult in multiples
    )
    stretch = base_total / (fraction * base.sweep_time)
    new_multiples = [1 + (mult - 1) * stretch for mult in multiples]
    durations = [
        2 * base.lpf_cutoff / (abs(mult - 1) * slope) for mult in new_multiples
    ]
    gap = (base.sweep_time - sum(durations)) / (len(durations) + 1)
    interferers = []
    position = gap
    for mult, dur in zip(new_multiples, durations):
        interferers.append(
            sc.InterfererSpec(
                slope_multiple=mult,
                center_time=position + dur / 2,
                amplitude_magnitude=1.0,
                amplitude_phase=0.0,
            )
        )
        position += dur + gap
    return replace(base, interferers=tuple(interferers))


def duration_rows(
    base: sc.FmcwScenario,
    durations,
    runs: int = 1,
    methods=METHODS,
    sinr0_db: float = -16.5,
    solver_params: SolverParams | None = None,
    rpca_params: RpcaParams | None = None,
    base_seed: int | None = None,
) -> list[dict]:
    """Mean SINR and |rho| against contaminated fraction at fixed SINR0."""
    rows = []
    for fraction in sorted(durations):
        variant = duration_scenario(base, fraction)
        x = sc.synth_beat_signal(variant)
        i_unit = sc.total_interference(variant)
        seed0 = variant.seed if base_seed is None else base_seed
        for method in sorted(methods):
            singles = [
                _mc_single(variant, x, i_unit, sinr0_db, method, r, seed0,
                           solver_params, rpca_params)
                for r in range(runs)
            ]
            rows.append(
                {
                    "duration_fraction": fraction,
                    "actual_fraction": sc.contaminated_fraction(variant),
                    "sinr0_db": sinr0_db,
                    "method": method,
                    "runs": runs,
                    "mean_sinr_db": float(np.mean([s["sinr_db"] for s in singles])),
                    "mean_rho_abs": float(np.mean([s["rho_abs"] for s in singles])),
                }
            )
    return rows
