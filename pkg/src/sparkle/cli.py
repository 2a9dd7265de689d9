"""Command-line interface.

Subcommands: simulate | mitigate | evaluate | montecarlo | duration-sweep
| range-profile.  Configuration comes from JSON files only; no environment
variables are read.  Outputs are byte-reproducible for a fixed config and
seed.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import harness, io, metrics, scenario as sc
from .hankel import default_shape
from .solver import recommended_params, spectral_norm

TRACE_COLUMNS = ("iteration", "rel_error", "beta", "mu")


def _out_dir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def run_simulate(args) -> int:
    cfg = io.load_config(args.config)
    bundle = harness.simulate_components(cfg.scenario)
    out = _out_dir(args.output)
    io.write_signal_csv(out / "reference.csv", bundle.reference)
    io.write_signal_csv(out / "interference.csv", bundle.interference)
    io.write_signal_csv(out / "noise.csv", bundle.noise)
    io.write_signal_csv(out / "measurement.csv", bundle.measurement)
    resolved = dict(io.scenario_to_dict(cfg.scenario), **bundle.derived)
    io.write_json(out / "scenario_resolved.json", resolved)
    print(f"simulate: wrote {bundle.derived['n_samples']} samples to {out}")
    return 0


def _solver_params_for(args, cfg_solver: dict, samples: np.ndarray):
    params = harness.solver_params_from_config(cfg_solver, samples.size)
    if args.auto_params:
        shape = default_shape(samples.size)
        sigma1 = spectral_norm(samples, shape)
        params = recommended_params(
            snr_db=args.snr_db,
            spectral_norm_y=sigma1,
            m=shape.m,
            n=shape.n,
            l0=args.l0,
            l1=args.l1,
            l2=args.l2,
        )
    if args.unlift_mode:
        params = replace(params, unlift_mode=args.unlift_mode)
    if args.seed is not None:
        params = replace(params, seed=args.seed)
    return params


def run_mitigate(args) -> int:
    samples = io.read_signal_csv(args.input)
    cfg_solver, cfg_rpca = {}, {}
    if args.config:
        cfg = io.load_config(args.config)
        cfg_solver, cfg_rpca = cfg.solver, cfg.rpca
    solver_params = _solver_params_for(args, cfg_solver, samples)
    rpca_params = harness.rpca_params_from_config(cfg_rpca)
    result = harness.mitigate_samples(samples, args.method, solver_params, rpca_params)

    out = _out_dir(args.output)
    io.write_signal_csv(out / "recovered.csv", result.signal)
    io.write_signal_csv(out / "interference_est.csv", result.interference)

    beta_trace = getattr(result, "beta_trace", None)
    mu_trace = getattr(result, "mu_trace", None)
    lines = [",".join(TRACE_COLUMNS)]
    for k, rel in enumerate(result.rel_error_trace):
        beta = io.fmt(beta_trace[k]) if beta_trace is not None else "nan"
        mu = io.fmt(mu_trace[k]) if mu_trace is not None else io.fmt(rpca_params.mu)
        lines.append(f"{k + 1},{io.fmt(rel)},{beta},{mu}")
    (out / "trace.csv").write_text("\n".join(lines) + "\n")

    digest = hashlib.sha256(Path(args.input).read_bytes()).hexdigest()[:16]
    report = harness.RunReport(
        scenario_digest=digest,
        method=args.method,
        iterations=result.iterations,
        wall_time_s=result.wall_time,
        converged=bool(result.converged),
    )
    payload = report.to_dict()
    if args.reference:
        ref = io.read_signal_csv(args.reference)
        payload.update(harness.evaluate_pair(ref, result.signal))
        corruption = samples - ref
        payload["sinr0_db"] = metrics.sinr(ref, corruption, mode="pre")
    io.write_json(out / "report.json", payload)
    print(
        f"mitigate[{args.method}]: {result.iterations} iterations, "
        f"converged={result.converged}, wrote {out}"
    )
    return 0


def run_evaluate(args) -> int:
    ref = io.read_signal_csv(args.reference)
    rec = io.read_signal_csv(args.input)
    payload = harness.evaluate_pair(ref, rec)
    io.write_json(args.output, payload)
    print(f"evaluate: sinr={payload['sinr_db']}, |rho|={payload['rho_abs']:.6f}")
    return 0


def run_montecarlo(args) -> int:
    cfg = io.load_config(args.config)
    solver_params = harness.solver_params_from_config(cfg.solver, cfg.scenario.n_samples)
    if args.seed is not None:
        solver_params = replace(solver_params, seed=args.seed)
    rows = harness.montecarlo_rows(
        cfg.scenario,
        runs=args.runs,
        sinr0_list=args.sinr0,
        methods=tuple(args.methods),
        solver_params=solver_params,
        rpca_params=harness.rpca_params_from_config(cfg.rpca),
        base_seed=args.seed,
    )
    Path(args.output).write_text(harness.rows_to_csv(rows, harness.MONTECARLO_COLUMNS))
    print(f"montecarlo: {len(rows)} rows -> {args.output}")
    return 0


def run_duration_sweep(args) -> int:
    cfg = io.load_config(args.config)
    solver_params = harness.solver_params_from_config(cfg.solver, cfg.scenario.n_samples)
    rows = harness.duration_rows(
        cfg.scenario,
        durations=args.durations,
        runs=args.runs,
        methods=tuple(args.methods),
        sinr0_db=args.sinr0,
        solver_params=solver_params,
        rpca_params=harness.rpca_params_from_config(cfg.rpca),
        base_seed=args.seed,
    )
    Path(args.output).write_text(harness.rows_to_csv(rows, harness.DURATION_COLUMNS))
    print(f"duration-sweep: {len(rows)} rows -> {args.output}")
    return 0


def run_range_profile(args) -> int:
    samples = io.read_signal_csv(args.input)
    cfg = io.load_config(args.config)
    signal = sc.ComplexSignal(samples, cfg.scenario.sampling_rate)
    ranges, mags_db = metrics.range_profile(
        signal, cfg.scenario.slope, nfft=args.nfft, window=args.window
    )
    lines = ["range_m,magnitude_db"]
    lines.extend(f"{io.fmt(r)},{io.fmt(m)}" for r, m in zip(ranges, mags_db))
    Path(args.output).write_text("\n".join(lines) + "\n")
    print(f"range-profile: {len(ranges)} bins -> {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparkle",
        description="FMCW interference mitigation: simulation, solvers, evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="synthesize scenario component CSVs")
    p.add_argument("--config", required=True, help="scenario JSON (path or bundled name)")
    p.add_argument("--output", required=True, help="output directory")
    p.set_defaults(func=run_simulate)

    p = sub.add_parser("mitigate", help="separate signal and interference")
    p.add_argument("--input", required=True, help="measurement CSV")
    p.add_argument("--method", choices=harness.METHODS, default="sparkle")
    p.add_argument("--config", help="config JSON supplying solver/rpca blocks")
    p.add_argument("--reference", help="optional reference CSV; adds SINR/rho to the report")
    p.add_argument("--output", required=True, help="output directory")
    p.add_argument("--unlift-mode", choices=("pick", "average"), dest="unlift_mode")
    p.add_argument("--seed", type=int)
    p.add_argument("--auto-params", action="store_true", dest="auto_params",
                   help="derive tau/beta0/mu0 from the measurement")
    p.add_argument("--snr-db", type=float, default=15.0,
                   help="SNR assumed by --auto-params (default 15)")
    p.add_argument("--l0", type=float, default=1.0)
    p.add_argument("--l1", type=float, default=1.0)
    p.add_argument("--l2", type=float, default=1.0)
    p.set_defaults(func=run_mitigate)

    p = sub.add_parser("evaluate", help="SINR and correlation of recovered vs reference")
    p.add_argument("--reference", required=True)
    p.add_argument("--input", required=True, help="recovered CSV")
    p.add_argument("--output", required=True, help="output JSON path")
    p.set_defaults(func=run_evaluate)

    p = sub.add_parser("montecarlo", help="seeded batch over SINR0 levels")
    p.add_argument("--config", required=True)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--sinr0", type=float, nargs="+", default=[-20.0, -10.0, 0.0])
    p.add_argument("--methods", nargs="+", choices=harness.METHODS,
                   default=list(harness.METHODS))
    p.add_argument("--seed", type=int, help="override the scenario base seed")
    p.add_argument("--output", required=True, help="output CSV path")
    p.set_defaults(func=run_montecarlo)

    p = sub.add_parser("duration-sweep", help="SINR vs contaminated fraction")
    p.add_argument("--config", required=True)
    p.add_argument("--durations", type=float, nargs="*", default=[])
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--methods", nargs="+", choices=harness.METHODS,
                   default=list(harness.METHODS))
    p.add_argument("--sinr0", type=float, default=-16.5)
    p.add_argument("--seed", type=int)
    p.add_argument("--output", required=True)
    p.set_defaults(func=run_duration_sweep)

    p = sub.add_parser("range-profile", help="range profile CSV of a signal")
    p.add_argument("--input", required=True, help="signal CSV")
    p.add_argument("--config", required=True, help="config giving sampling rate and slope")
    p.add_argument("--nfft", type=int)
    p.add_argument("--window", choices=("rectangular", "hann"), default="rectangular")
    p.add_argument("--output", required=True)
    p.set_defaults(func=run_range_profile)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
