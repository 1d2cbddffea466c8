"""Bayesian logistic regression with a Gaussian coefficient prior.

Coefficients beta have length D + 1; an intercept column of ones is
prepended to every feature vector.  With s_i = sigmoid(beta . xbar_i) the
posterior pieces are

    log-posterior: sum_i [ t_i ln s_i + (1 - t_i) ln(1 - s_i) ]
                   - |beta|^2 / (2 alpha)
    gradient:      Xbar^T (t - s) - beta / alpha
    metric:        sum_i s_i (1 - s_i) xbar_i xbar_i^T + I / alpha
    partials:      d/dbeta_r adds the factor (1 - 2 s_i) xbar_ir per term

The prior variance alpha defaults to 100, which keeps the metric SPD when
many observations sit in the saturated tails.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ..errors import InputError
from .base import GaussianPrior, TargetModel


class LogisticModel(TargetModel):
    name = "logreg"

    def __init__(self, features, responses, alpha: float = 100.0):
        x = np.asarray(features, dtype=float)
        t = np.asarray(responses, dtype=float).reshape(-1)
        if x.ndim != 2 or x.shape[0] != t.size or x.shape[0] < 1:
            raise InputError(
                f"features {x.shape} and responses {t.shape} do not align"
            )
        if not np.all(np.isfinite(x)):
            raise InputError("features must be finite")
        if not np.all((t == 0.0) | (t == 1.0)):
            raise InputError("responses must be binary 0/1")
        if alpha <= 0:
            raise InputError(f"prior variance must be positive, got {alpha}")
        self._xbar = np.hstack([np.ones((x.shape[0], 1)), x])
        self._t = t
        self._n = x.shape[0]
        self.dim = x.shape[1] + 1
        self.alpha = float(alpha)
        self.prior = GaussianPrior(variance_scale=self.alpha)

    @property
    def n_observations(self) -> int:
        return self._n

    @property
    def design(self) -> np.ndarray:
        return self._xbar

    @property
    def responses(self) -> np.ndarray:
        return self._t

    def log_posterior(self, theta) -> float:
        beta = self._theta(theta)
        logits = self._xbar @ beta
        # ln s = -log(1 + e^-u), ln(1 - s) = -log(1 + e^u), both overflow-safe
        log_s = -np.logaddexp(0.0, -logits)
        log_1ms = -np.logaddexp(0.0, logits)
        data = float(self._t @ log_s + (1.0 - self._t) @ log_1ms)
        return data - float(beta @ beta) / (2.0 * self.alpha)

    def gradient(self, theta) -> np.ndarray:
        beta = self._theta(theta)
        s = expit(self._xbar @ beta)
        return self._xbar.T @ (self._t - s) - beta / self.alpha

    def _weights(self, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        logits = self._xbar @ beta
        s = expit(logits)
        return s, expit(logits) * expit(-logits)

    def metric(self, theta) -> np.ndarray:
        beta = self._theta(theta)
        _, w = self._weights(beta)
        g = (self._xbar * w[:, None]).T @ self._xbar
        g[np.diag_indices_from(g)] += 1.0 / self.alpha
        return g

    def metric_partials(self, theta) -> np.ndarray:
        beta = self._theta(theta)
        s, w = self._weights(beta)
        c = w * (1.0 - 2.0 * s)
        out = np.empty((self.dim, self.dim, self.dim))
        for r in range(self.dim):
            weighted = self._xbar * (c * self._xbar[:, r])[:, None]
            out[r] = weighted.T @ self._xbar
        return out

    def sample_score_observations(self, theta, n: int, rng) -> np.ndarray:
        # Resample responses at the model's own design points.
        beta = self._theta(theta)
        rows = rng.integers(0, self._n, size=n)
        xbar = self._xbar[rows]
        prob = expit(xbar @ beta)
        t = (rng.random(n) < prob).astype(float)
        return np.hstack([xbar, t[:, None]])

    def score(self, theta, observations) -> np.ndarray:
        beta = self._theta(theta)
        obs = np.asarray(observations, dtype=float)
        xbar, t = obs[:, :-1], obs[:, -1]
        s = expit(xbar @ beta)
        return xbar * (t - s)[:, None]
