"""Interference mitigation for dechirped FMCW radar signals.

Beat signals from point targets are sums of complex exponentials, so
their Hankel lift is low rank; interference bursts from other FMCW radars
are short in time, so they stay sparse as vectors.  The main solver
splits a measurement into those two parts with an SVD-free ADMM on a
factorised nuclear norm; a classic robust-PCA baseline, an FMCW scenario
simulator, quality metrics and a batch-evaluation CLI round out the
package.
"""

from .estimators import RpcaMitigator, SparkleMitigator
from .hankel import (
    HankelShape,
    adjoint,
    anti_diagonal_counts,
    default_shape,
    lift,
    unlift_average,
    unlift_pick,
)
from .metrics import corr_coeff, range_profile, sinr
from .rpca import RpcaParams, RpcaResult, rpca_solve, svt
from .scenario import (
    SPEED_OF_LIGHT,
    ComplexSignal,
    FmcwScenario,
    InterfererSpec,
    TargetSpec,
    compose_measurement,
    contaminated_fraction,
    noise_for_snr,
    scale_interference_to_sinr0,
    synth_beat_signal,
    synth_interference,
    total_interference,
)
from .solver import (
    SolverParams,
    SolverResult,
    recommended_params,
    soft_threshold,
    solve,
    spectral_norm,
)

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "ComplexSignal",
    "FmcwScenario",
    "HankelShape",
    "InterfererSpec",
    "RpcaMitigator",
    "RpcaParams",
    "RpcaResult",
    "SolverParams",
    "SolverResult",
    "SparkleMitigator",
    "TargetSpec",
    "adjoint",
    "anti_diagonal_counts",
    "compose_measurement",
    "contaminated_fraction",
    "corr_coeff",
    "default_shape",
    "lift",
    "noise_for_snr",
    "range_profile",
    "recommended_params",
    "rpca_solve",
    "scale_interference_to_sinr0",
    "sinr",
    "soft_threshold",
    "solve",
    "spectral_norm",
    "svt",
    "synth_beat_signal",
    "synth_interference",
    "total_interference",
    "unlift_average",
    "unlift_pick",
]
