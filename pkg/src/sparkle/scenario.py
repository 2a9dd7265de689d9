"""Dechirped FMCW scenario synthesis.

After dechirping, each point target at range R contributes a complex
exponential at the beat frequency f_b = 2 R |K_r| / c, where K_r is the
sweep slope (bandwidth / sweep time, negated for down-sweeps).  An FMCW
aggressor with slope K_i = slope_multiple * K_r leaves, after dechirp and
anti-aliasing low-pass filtering, a chirp burst with residual slope
dK = (slope_multiple - 1) K_r.  The burst is modelled with an ideal
instantaneous-frequency gate: samples where |dK (t - t0)| <= lpf_cutoff
carry A exp(j (pi dK (t - t0)^2 + phi)), everything else is exactly zero,
so each burst lasts 2 lpf_cutoff / |dK| seconds.

All functions are pure: identical (scenario, seed) inputs give
bit-identical outputs, and returned arrays are read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .validation import as_complex_vector

__all__ = [
    "SPEED_OF_LIGHT",
    "ComplexSignal",
    "TargetSpec",
    "InterfererSpec",
    "FmcwScenario",
    "synth_beat_signal",
    "synth_interference",
    "interference_mask",
    "total_interference",
    "noise_for_snr",
    "scale_interference_to_sinr0",
    "compose_measurement",
    "contaminated_fraction",
]

SPEED_OF_LIGHT = 3.0e8


def _frozen_complex(samples) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.complex128).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ComplexSignal:
    """A uniformly sampled complex signal and its sampling rate in Hz."""

    samples: np.ndarray
    sampling_rate: float

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_complex(self.samples))
        if self.samples.ndim != 1 or self.samples.size < 1:
            raise ValueError("samples must be a non-empty 1-D vector")
        if not self.sampling_rate > 0:
            raise ValueError("sampling_rate must be positive")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sampling_rate


@dataclass(frozen=True)
class TargetSpec:
    """Point target: range in metres plus complex amplitude in polar form."""

    range: float
    amplitude_magnitude: float = 1.0
    amplitude_phase: float = 0.0

    def __post_init__(self):
        if not self.range > 0:
            raise ValueError("target range must be positive")
        if self.amplitude_magnitude < 0:
            raise ValueError("target amplitude magnitude must be >= 0")


@dataclass(frozen=True)
class InterfererSpec:
    """One interference burst.

    ``slope_multiple`` is the aggressor sweep slope in units of the victim
    slope; 1 is rejected because a co-slope aggressor never leaves the
    passband (it is not a short burst).  ``center_time`` is the instant the
    residual chirp crosses zero instantaneous frequency, and the burst
    phase is referenced to that instant.
    """

    slope_multiple: float
    center_time: float
    amplitude_magnitude: float = 1.0
    amplitude_phase: float = 0.0

    def __post_init__(self):
        if self.slope_multiple == 1:
            raise ValueError("slope_multiple must differ from 1")
        if self.center_time < 0:
            raise ValueError("center_time must be >= 0")
        if self.amplitude_magnitude < 0:
            raise ValueError("interferer amplitude magnitude must be >= 0")


@dataclass(frozen=True)
class FmcwScenario:
    """Radar parameters, target list, interferer list and noise level."""

    center_frequency: float
    sweep_time: float
    bandwidth: float
    lpf_cutoff: float
    sampling_rate: float
    sweep_direction: str = "up"
    targets: tuple[TargetSpec, ...] = field(default_factory=tuple)
    interferers: tuple[InterfererSpec, ...] = field(default_factory=tuple)
    snr_db: float = math.inf
    seed: int = 0

    def __post_init__(self):
        for name in ("center_frequency", "sweep_time", "bandwidth",
                     "lpf_cutoff", "sampling_rate"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.sweep_direction not in ("up", "down"):
            raise ValueError("sweep_direction must be 'up' or 'down'")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "interferers", tuple(self.interferers))
        if self.n_samples < 2:
            raise ValueError("scenario yields fewer than 2 samples")
        for spec in self.interferers:
            if spec.center_time > self.sweep_time:
                raise ValueError("interferer center_time exceeds sweep_time")
        for fb, tgt in zip(self.beat_frequencies, self.targets):
            if fb >= self.lpf_cutoff:
                raise ValueError(
                    f"target at {tgt.range} m has beat frequency "
                    f"{fb:.4g} Hz >= LPF cutoff {self.lpf_cutoff:.4g} Hz"
                )

    @property
    def slope(self) -> float:
        """Signed sweep slope K_r in Hz/s (negative for down-sweeps)."""
        k = self.bandwidth / self.sweep_time
        return k if self.sweep_direction == "up" else -k

    @property
    def n_samples(self) -> int:
        return round(self.sampling_rate * self.sweep_time)

    @property
    def beat_frequencies(self) -> tuple[float, ...]:
        return tuple(
            2.0 * t.range * abs(self.slope) / SPEED_OF_LIGHT for t in self.targets
        )

    def time_axis(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.sampling_rate


def synth_beat_signal(scenario: FmcwScenario) -> ComplexSignal:
    """Sum of target beat tones; an empty target list gives the zero vector.

    Up-sweeps rotate clockwise, x[k] = sum_i a_i exp(-j 2 pi f_b,i k dt);
    down-sweeps flip the sign of the beat frequencies.
    """
    t = scenario.time_axis()
    x = np.zeros(t.size, dtype=np.complex128)
    sign = -1.0 if scenario.slope > 0 else 1.0
    for tgt, fb in zip(scenario.targets, scenario.beat_frequencies):
        amp = tgt.amplitude_magnitude * np.exp(1j * tgt.amplitude_phase)
        x += amp * np.exp(sign * 2j * np.pi * fb * t)
    return ComplexSignal(x, scenario.sampling_rate)


def interference_mask(scenario: FmcwScenario, which: int) -> np.ndarray:
    """Boolean gate of one burst: |dK (t - t0)| <= lpf_cutoff."""
    spec = scenario.interferers[which]
    dk = (spec.slope_multiple - 1.0) * scenario.slope
    t = scenario.time_axis()
    return np.abs(dk * (t - spec.center_time)) <= scenario.lpf_cutoff


def synth_interference(scenario: FmcwScenario, which: int) -> ComplexSignal:
    """One dechirped interference burst, exactly zero outside its gate."""
    spec = scenario.interferers[which]
    dk = (spec.slope_multiple - 1.0) * scenario.slope
    t = scenario.time_axis()
    gate = interference_mask(scenario, which)
    i = np.zeros(t.size, dtype=np.complex128)
    tau = t[gate] - spec.center_time
    i[gate] = spec.amplitude_magnitude * np.exp(
        1j * (np.pi * dk * tau**2 + spec.amplitude_phase)
    )
    return ComplexSignal(i, scenario.sampling_rate)


def total_interference(scenario: FmcwScenario) -> ComplexSignal:
    """Sum of all interference bursts."""
    total = np.zeros(scenario.n_samples, dtype=np.complex128)
    for idx in range(len(scenario.interferers)):
        total = total + synth_interference(scenario, idx).samples
    return ComplexSignal(total, scenario.sampling_rate)


def contaminated_fraction(scenario: FmcwScenario) -> float:
    """Fraction of samples covered by at least one nonzero burst."""
    union = np.zeros(scenario.n_samples, dtype=bool)
    for idx, spec in enumerate(scenario.interferers):
        if spec.amplitude_magnitude > 0:
            union |= interference_mask(scenario, idx)
    return float(union.mean())


def noise_for_snr(x: ComplexSignal, snr_db: float, seed: int) -> ComplexSignal:
    """Circular complex Gaussian noise rescaled so that
    10 log10(||x||^2 / ||n||^2) equals `snr_db` exactly.

    The post-hoc rescale makes the realised SNR independent of the draw,
    and the draw is deterministic given `seed`.  An infinite SNR returns
    the zero vector.
    """
    samples = as_complex_vector(x, "x")
    if math.isinf(snr_db) and snr_db > 0:
        return ComplexSignal(np.zeros(samples.size), x.sampling_rate)
    xnorm = np.linalg.norm(samples)
    if xnorm == 0:
        raise ValueError("cannot set a finite SNR against a zero signal")
    rng = np.random.default_rng(seed)
    raw = (
        rng.standard_normal(samples.size) + 1j * rng.standard_normal(samples.size)
    ) / np.sqrt(2)
    raw *= xnorm / (np.linalg.norm(raw) * 10 ** (snr_db / 20))
    return ComplexSignal(raw, x.sampling_rate)


def scale_interference_to_sinr0(
    x: ComplexSignal, i: ComplexSignal, n: ComplexSignal, target_sinr0: float
) -> float:
    """Nonnegative alpha with 20 log10(||x|| / ||alpha i + n||) = target_sinr0.

    Solves the quadratic ||alpha i + n||^2 = ||x||^2 10^(-target/10) in
    closed form; raises if the noise alone already exceeds the corruption
    budget (no nonnegative real root).
    """
    xv = as_complex_vector(x, "x")
    iv = as_complex_vector(i, "i")
    nv = as_complex_vector(n, "n")
    a = float(np.linalg.norm(iv) ** 2)
    if a == 0:
        raise ValueError("interference is zero; cannot scale")
    budget = float(np.linalg.norm(xv) ** 2) / 10 ** (target_sinr0 / 10)
    b = 2.0 * float(np.real(np.vdot(iv, nv)))
    c = float(np.linalg.norm(nv) ** 2) - budget
    disc = b * b - 4 * a * c
    if disc < 0:
        raise ValueError(f"target SINR0 {target_sinr0} dB is unreachable")
    roots = [r for r in ((-b + math.sqrt(disc)) / (2 * a), (-b - math.sqrt(disc)) / (2 * a)) if r >= 0]
    if not roots:
        raise ValueError(f"target SINR0 {target_sinr0} dB is unreachable")
    return min(roots)


def compose_measurement(
    x: ComplexSignal, i: ComplexSignal, n: ComplexSignal
) -> ComplexSignal:
    """Elementwise y = x + i + n on a common sampling grid."""
    parts = (x, i, n)
    lengths = {len(p) for p in parts}
    rates = {p.sampling_rate for p in parts}
    if len(lengths) != 1 or len(rates) != 1:
        raise ValueError("x, i, n must share length and sampling rate")
    return ComplexSignal(x.samples + i.samples + n.samples, x.sampling_rate)
