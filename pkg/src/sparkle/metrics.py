"""Evaluation metrics: SINR, complex correlation, range profiles."""

from __future__ import annotations

import numpy as np

from .scenario import SPEED_OF_LIGHT, ComplexSignal
from .validation import as_complex_vector

__all__ = ["sinr", "corr_coeff", "range_profile", "DB_FLOOR"]

DB_FLOOR = -300.0


def sinr(reference, other, mode: str = "post") -> float:
    """Signal-to-interference-plus-noise ratio in dB.

    In "pre" mode `other` is the corruption i + n and the result is
    20 log10(||s|| / ||i + n||).  In "post" mode `other` is the recovered
    estimate and the corruption is s - s_hat, so the value is the
    reciprocal of the relative recovery error on a dB scale.  Exact
    recovery returns +inf.
    """
    s = as_complex_vector(reference, "reference")
    o = as_complex_vector(other, "other")
    if s.size != o.size:
        raise ValueError("inputs must have equal length")
    s_norm = np.linalg.norm(s)
    if s_norm == 0:
        raise ValueError("reference signal is zero")
    if mode == "post":
        denom = np.linalg.norm(s - o)
    elif mode == "pre":
        denom = np.linalg.norm(o)
    else:
        raise ValueError("mode must be 'pre' or 'post'")
    if denom == 0:
        return float("inf")
    return float(20.0 * np.log10(s_norm / denom))


def corr_coeff(reference, estimate) -> complex:
    """Complex correlation rho = <estimate, reference> / (||reference|| ||estimate||).

    |rho| <= 1 by Cauchy-Schwarz; the phase is the relative phase offset
    of the estimate (an estimate rotated by e^{j phi} yields e^{-j phi}).
    """
    s = as_complex_vector(reference, "reference")
    e = as_complex_vector(estimate, "estimate")
    sn, en = np.linalg.norm(s), np.linalg.norm(e)
    if sn == 0 or en == 0:
        raise ValueError("correlation undefined for zero vectors")
    return complex(np.vdot(e, s) / (sn * en))


def _next_pow_two(n: int) -> int:
    return 1 << (n - 1).bit_length()


def range_profile(
    x: ComplexSignal,
    slope: float,
    nfft: int | None = None,
    window: str = "rectangular",
) -> tuple[np.ndarray, np.ndarray]:
    """Zero-padded spectrum of a beat signal mapped onto a range axis.

    Beat tones rotate against the sweep direction, so the magnitude at
    nonnegative beat frequency f is read from the spectrum at -sign(slope) f
    and placed at range r = c f / (2 |slope|).  Magnitudes are in dB,
    floored at -300 dB so downstream CSV output stays finite.  nfft
    defaults to the next power of two at or above 4x the signal length.
    """
    samples = as_complex_vector(x, "x")
    if slope == 0:
        raise ValueError("slope must be nonzero")
    if nfft is None:
        nfft = _next_pow_two(4 * samples.size)
    if nfft < samples.size:
        raise ValueError(f"nfft={nfft} is smaller than the signal length {samples.size}")
    if window == "rectangular":
        tapered = samples
    elif window == "hann":
        tapered = samples * np.hanning(samples.size)
    else:
        raise ValueError("window must be 'rectangular' or 'hann'")
    spectrum = np.fft.fft(tapered, nfft)
    half = nfft // 2
    bins = np.arange(half + 1)
    if slope > 0:
        picked = spectrum[(nfft - bins) % nfft]
    else:
        picked = spectrum[bins]
    freqs = bins * (x.sampling_rate / nfft)
    ranges = SPEED_OF_LIGHT * freqs / (2.0 * abs(slope))
    mags = np.abs(picked)
    with np.errstate(divide="ignore"):
        mags_db = 20.0 * np.log10(mags)
    return ranges, np.maximum(mags_db, DB_FLOOR)
