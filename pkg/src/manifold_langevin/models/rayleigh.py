"""Scale estimation for Rayleigh-distributed amplitudes.

Per observation z > 0 the log-likelihood is ln z - 2 ln s - z^2 / (2 s^2),
the score is -2/s + z^2/s^3, the single-observation information is 4/s^2
with derivative -8/s^3, and the N-observation metric is N times that.
"""

from __future__ import annotations

import math

import numpy as np

from ..datagen import rayleigh_from_uniform
from ..errors import DomainError, InputError
from .base import NEG_INF, TargetModel, UniformBoxPrior


class RayleighModel(TargetModel):
    name = "rayleigh"
    dim = 1

    def __init__(self, observations, support: tuple[float, float] = (0.1, 10.0)):
        z = np.asarray(observations, dtype=float).reshape(-1)
        if z.size < 1:
            raise InputError("need at least one observation")
        if np.any(z <= 0) or not np.all(np.isfinite(z)):
            raise InputError("observations must be positive and finite")
        if not 0 < support[0] < support[1]:
            raise InputError(f"bad support {support}")
        self._z = z
        self._n = z.size
        self._sum_z2 = float(np.sum(z * z))
        self._sum_log_z = float(np.sum(np.log(z)))
        self.prior = UniformBoxPrior((support[0],), (support[1],))

    @property
    def n_observations(self) -> int:
        return self._n

    @property
    def observations(self) -> np.ndarray:
        return self._z

    def log_posterior(self, theta) -> float:
        sigma = self._theta(theta)[0]
        if not self.prior.contains(np.array([sigma])):
            return NEG_INF
        return (
            self._sum_log_z
            - 2.0 * self._n * math.log(sigma)
            - self._sum_z2 / (2.0 * sigma * sigma)
        )

    def gradient(self, theta) -> np.ndarray:
        sigma = self._theta(theta)[0]
        self._require_support(sigma)
        return np.array([-2.0 * self._n / sigma + self._sum_z2 / sigma**3])

    def metric(self, theta) -> np.ndarray:
        sigma = self._theta(theta)[0]
        self._require_support(sigma)
        return np.array([[4.0 * self._n / (sigma * sigma)]])

    def metric_partials(self, theta) -> np.ndarray:
        sigma = self._theta(theta)[0]
        self._require_support(sigma)
        return np.array([[[-8.0 * self._n / sigma**3]]])

    def sample_score_observations(self, theta, n: int, rng) -> np.ndarray:
        sigma = self._theta(theta)[0]
        self._require_support(sigma)
        u = rng.random(n)
        u = np.where(u == 0.0, 2.0**-53, u)
        return rayleigh_from_uniform(u, sigma)

    def score(self, theta, observations) -> np.ndarray:
        sigma = self._theta(theta)[0]
        z = np.asarray(observations, dtype=float).reshape(-1)
        return (-2.0 / sigma + (z * z) / sigma**3)[:, None]

    def _require_support(self, sigma: float) -> None:
        if not self.prior.contains(np.array([sigma])):
            raise DomainError(f"sigma={sigma} outside support {self.prior}")
