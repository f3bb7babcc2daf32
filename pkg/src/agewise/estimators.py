"""scikit-learn style wrapper around :func:`agewise.inference.fit_mle`."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, DensityMixin
from sklearn.utils.validation import check_is_fitted

from .inference import build_model, fit_mle, sample


class LifetimeEstimator(DensityMixin, BaseEstimator):
    """Maximum-likelihood lifetime model with the estimator protocol.

    Parameters
    ----------
    family : str
        A baseline name, ``"dus-<baseline>"``, ``"gdus-<baseline>"`` or
        ``"dus-ew"``.
    init : sequence of float, optional
        Starting parameters; moment matching is used when omitted.
    seed : int
        Seed of the restart perturbations.
    restarts : int
        Number of random restarts.

    Examples
    --------
    >>> est = LifetimeEstimator("exponential").fit([0.5, 1.0, 1.5, 2.0, 0.2])
    >>> round(est.params_["theta"], 6)
    0.961538
    """

    def __init__(self, family: str = "exponential", init=None, seed: int = 0, restarts: int = 3):
        self.family = family
        self.init = init
        self.seed = seed
        self.restarts = restarts

    @staticmethod
    def _as_1d(X):
        x = np.asarray(X, dtype=float)
        if x.ndim == 2:
            if x.shape[1] != 1:
                raise ValueError(f"expected a single column of lifetimes, got shape {x.shape}")
            x = x[:, 0]
        return x.reshape(-1)

    def fit(self, X, y=None):
        x = self._as_1d(X)
        self.result_ = fit_mle(self.family, x, init=self.init, seed=self.seed, restarts=self.restarts)
        self.params_ = dict(self.result_.params)
        self.model_ = build_model(self.family, self.params_)
        self.n_features_in_ = 1
        return self

    def score_samples(self, X):
        """Log density of each observation."""
        check_is_fitted(self, "model_")
        return np.asarray(self.model_.logpdf(self._as_1d(X)), dtype=float)

    def score(self, X, y=None):
        """Mean log-likelihood per observation."""
        return float(np.mean(self.score_samples(X)))

    def sample(self, n_samples: int = 1, random_state: int = 0):
        check_is_fitted(self, "model_")
        return sample(self.model_, n_samples, random_state)
