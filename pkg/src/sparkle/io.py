"""File formats: complex-sample CSV, scenario JSON configs, JSON reports.

Complex signals are stored one sample per line as ``re,im`` decimal text
with 17 significant digits (lossless float64 round trip), preceded by a
single ``re,im`` header line.  The header is optional on read.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .scenario import FmcwScenario, InterfererSpec, TargetSpec

__all__ = [
    "fmt",
    "write_signal_csv",
    "read_signal_csv",
    "write_json",
    "scenario_to_dict",
    "scenario_from_dict",
    "ScenarioConfig",
    "load_config",
    "bundled_config_path",
    "scenario_digest",
]

SIGNAL_HEADER = "re,im"


def fmt(value: float) -> str:
    """Float to decimal text at 17 significant digits."""
    return format(float(value), ".17g")


def write_signal_csv(path, samples) -> None:
    arr = np.asarray(getattr(samples, "samples", samples), dtype=np.complex128)
    lines = [SIGNAL_HEADER]
    lines.extend(f"{fmt(v.real)},{fmt(v.imag)}" for v in arr)
    Path(path).write_text("\n".join(lines) + "\n")


def read_signal_csv(path) -> np.ndarray:
    text = Path(path).read_text()
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if lineno == 1 and line.lower().replace(" ", "") == SIGNAL_HEADER:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}: line {lineno} is not 're,im'")
        rows.append(complex(float(parts[0]), float(parts[1])))
    if not rows:
        raise ValueError(f"{path}: empty signal")
    return np.asarray(rows, dtype=np.complex128)


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def scenario_to_dict(scenario: FmcwScenario) -> dict:
    return {
        "center_frequency": scenario.center_frequency,
        "sweep_time": scenario.sweep_time,
        "bandwidth": scenario.bandwidth,
        "lpf_cutoff": scenario.lpf_cutoff,
        "sampling_rate": scenario.sampling_rate,
        "sweep_direction": scenario.sweep_direction,
        "snr_db": scenario.snr_db,
        "seed": scenario.seed,
        "targets": [
            {
                "range": t.range,
                "amplitude_magnitude": t.amplitude_magnitude,
                "amplitude_phase": t.amplitude_phase,
            }
            for t in scenario.targets
        ],
        "interferers": [
            {
                "slope_multiple": s.slope_multiple,
                "center_time": s.center_time,
                "amplitude_magnitude": s.amplitude_magnitude,
                "amplitude_phase": s.amplitude_phase,
            }
            for s in scenario.interferers
        ],
    }


def scenario_from_dict(data: dict) -> FmcwScenario:
    snr = data.get("snr_db", float("inf"))
    if isinstance(snr, str):
        snr = float(snr)
    return FmcwScenario(
        center_frequency=data["center_frequency"],
        sweep_time=data["sweep_time"],
        bandwidth=data["bandwidth"],
        lpf_cutoff=data["lpf_cutoff"],
        sampling_rate=data["sampling_rate"],
        sweep_direction=data.get("sweep_direction", "up"),
        snr_db=snr,
        seed=data.get("seed", 0),
        targets=tuple(
            TargetSpec(
                range=t["range"],
                amplitude_magnitude=t.get("amplitude_magnitude", 1.0),
                amplitude_phase=t.get("amplitude_phase", 0.0),
            )
            for t in data.get("targets", [])
        ),
        interferers=tuple(
            InterfererSpec(
                slope_multiple=s["slope_multiple"],
                center_time=s["center_time"],
                amplitude_magnitude=s.get("amplitude_magnitude", 1.0),
                amplitude_phase=s.get("amplitude_phase", 0.0),
            )
            for s in data.get("interferers", [])
        ),
    )


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed config file: the scenario plus optional solver/rpca blocks."""

    scenario: FmcwScenario
    solver: dict
    rpca: dict


def bundled_config_path(name: str) -> Path:
    """Path of a config shipped inside the package (e.g. 'point_targets')."""
    fname = name if name.endswith(".json") else f"{name}.json"
    return Path(str(resources.files("sparkle").joinpath("data", fname)))


def load_config(path) -> ScenarioConfig:
    """Read a scenario config from a path or a bundled-config name."""
    p = Path(path)
    if not p.exists():
        candidate = bundled_config_path(str(path))
        if candidate.exists():
            p = candidate
        else:
            raise FileNotFoundError(f"config not found: {path}")
    data = json.loads(p.read_text())
    return ScenarioConfig(
        scenario=scenario_from_dict(data),
        solver=dict(data.get("solver", {})),
        rpca=dict(data.get("rpca", {})),
    )


def scenario_digest(scenario: FmcwScenario) -> str:
    """Stable hex digest of the scenario contents."""
    payload = json.dumps(scenario_to_dict(scenario), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
