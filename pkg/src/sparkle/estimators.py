"""Scikit-learn style estimators wrapping the two separation methods.

Both estimators map measurements of shape (n_sweeps, n_samples) -- or a
single 1-D sweep -- to the recovered beat signals of the same shape.
Nothing is learned across sweeps: each row is an independent optimisation,
so ``transform`` may be called on new measurements of the same length, and
``fit`` stores the decomposition of the fitted data in trailing-underscore
attributes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .hankel import HankelShape, default_shape
from .rpca import RpcaParams, rpca_solve
from .solver import SolverParams, solve
from .validation import as_signal_matrix

__all__ = ["SparkleMitigator", "RpcaMitigator"]


class _MitigatorBase(BaseEstimator, TransformerMixin):
    def _solve_row(self, row: np.ndarray):
        raise NotImplementedError

    def fit(self, X, y=None):
        """Decompose each sweep of X and store the results.

        Parameters
        ----------
        X : array-like, shape (n_sweeps, n_samples) or (n_samples,)
            Complex measurement sweeps.
        y : None
            Present for scikit-learn API compatibility.

        Returns
        -------
        self : object
        """
        mat, was_1d = as_signal_matrix(X)
        results = [self._solve_row(row) for row in mat]
        signal = np.vstack([r.signal for r in results])
        interference = np.vstack([r.interference for r in results])
        if was_1d:
            signal, interference = signal[0], interference[0]
        self.signal_ = signal
        self.interference_ = interference
        self.n_iter_ = np.array([r.iterations for r in results])
        self.converged_ = np.array([r.converged for r in results])
        self.rel_error_ = np.array(
            [r.rel_error_trace[-1] if r.iterations else 0.0 for r in results]
        )
        self.n_features_in_ = mat.shape[1]
        return self

    def transform(self, X):
        """Return the recovered beat signal for each sweep of X.

        Each row is solved independently with the configured
        hyperparameters; X need not be the data passed to ``fit``.
        """
        check_is_fitted(self, "n_features_in_")
        mat, was_1d = as_signal_matrix(X)
        if mat.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {mat.shape[1]} samples per sweep, expected {self.n_features_in_}"
            )
        out = np.vstack([self._solve_row(row).signal for row in mat])
        return out[0] if was_1d else out

    def fit_transform(self, X, y=None):
        """Fit and return the recovered signals without solving twice."""
        return self.fit(X).signal_


class SparkleMitigator(_MitigatorBase):
    """Interference mitigation via sparse + low-rank Hankel decomposition.

    SVD-free ADMM: the lifted signal is factorised as U V^H while the
    interference stays an l1-penalised time-domain vector.

    Parameters mirror :class:`sparkle.solver.SolverParams`; see there for
    the iteration details and scheduling semantics.

    Attributes
    ----------
    signal_ : ndarray
        Recovered beat signal(s) for the fitted data.
    interference_ : ndarray
        Separated interference estimate(s).
    n_iter_ : ndarray of int
        Iterations used per sweep.
    converged_ : ndarray of bool
        Whether each sweep reached the relative-error tolerance.
    """

    def __init__(
        self,
        tau: float = 0.02,
        beta0: float = 0.1,
        mu0: float = 0.02,
        k_beta: float = 1.6,
        k_mu: float = 1.2,
        growth_interval: int = 10,
        delta: float = 1e-6,
        rank: int = 32,
        hankel_shape: HankelShape | None = None,
        unlift_mode: str = "pick",
        max_iters: int = 500,
        random_state: int = 0,
    ):
        self.tau = tau
        self.beta0 = beta0
        self.mu0 = mu0
        self.k_beta = k_beta
        self.k_mu = k_mu
        self.growth_interval = growth_interval
        self.delta = delta
        self.rank = rank
        self.hankel_shape = hankel_shape
        self.unlift_mode = unlift_mode
        self.max_iters = max_iters
        self.random_state = random_state

    def _solve_row(self, row):
        params = SolverParams(
            tau=self.tau,
            beta0=self.beta0,
            mu0=self.mu0,
            k_beta=self.k_beta,
            k_mu=self.k_mu,
            growth_interval=self.growth_interval,
            delta=self.delta,
            rank=self.rank,
            shape=self.hankel_shape,
            unlift_mode=self.unlift_mode,
            max_iters=self.max_iters,
            seed=self.random_state,
        )
        return solve(row, params)


class RpcaMitigator(_MitigatorBase):
    """Robust-PCA baseline: SVT on the lifted measurement.

    Parameters mirror :class:`sparkle.rpca.RpcaParams`.  Fitted attributes
    are as in :class:`SparkleMitigator`.
    """

    def __init__(
        self,
        tau: float | None = None,
        mu: float = 0.05,
        delta: float = 1e-6,
        max_iters: int = 500,
        hankel_shape: HankelShape | None = None,
    ):
        self.tau = tau
        self.mu = mu
        self.delta = delta
        self.max_iters = max_iters
        self.hankel_shape = hankel_shape

    def _solve_row(self, row):
        shape = self.hankel_shape or default_shape(row.size)
        params = RpcaParams(
            tau=self.tau, mu=self.mu, delta=self.delta, max_iters=self.max_iters
        )
        return rpca_solve(row, shape, params)
