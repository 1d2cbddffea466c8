"""Twist estimation for the banana-shaped (sheared Gaussian) density.

Observation pairs (z1, z2) have unnormalized log density
-z1^2/200 - (z2 + B z1^2 - 100 B)^2 / 2 in the single twist parameter B.
The score per pair is -(z2 + B z1^2 - 100 B)(z1^2 - 100); averaging its
square over independent (z1, z2) ~ N(0, diag(100, 1)) gives the closed-form
single-observation information 2e4 + 2e8 B^2 with derivative 4e8 B, both
scaled by N for N pairs.  The information expectation is taken under the
unsheared Gaussian law, so the oracle sampling hook draws unsheared pairs.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, InputError
from .base import NEG_INF, TargetModel, UniformBoxPrior

_INFO_CONST = 2.0e4
_INFO_QUAD = 2.0e8


class BananaModel(TargetModel):
    name = "banana"
    dim = 1

    def __init__(self, observations, support: tuple[float, float] = (-1.0, 1.0)):
        pairs = np.asarray(observations, dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 1:
            raise InputError(f"observations must have shape (n, 2), got {pairs.shape}")
        if not np.all(np.isfinite(pairs)):
            raise InputError("observations must be finite")
        self._z1 = pairs[:, 0].copy()
        self._z2 = pairs[:, 1].copy()
        self._n = pairs.shape[0]
        self.prior = UniformBoxPrior((support[0],), (support[1],))

    @property
    def n_observations(self) -> int:
        return self._n

    @property
    def observations(self) -> np.ndarray:
        return np.column_stack([self._z1, self._z2])

    def _residual(self, b: float) -> np.ndarray:
        return self._z2 + b * self._z1 * self._z1 - 100.0 * b

    def log_posterior(self, theta) -> float:
        b = self._theta(theta)[0]
        if not self.prior.contains(np.array([b])):
            return NEG_INF
        r = self._residual(b)
        return float(np.sum(-self._z1 * self._z1 / 200.0 - 0.5 * r * r))

    def gradient(self, theta) -> np.ndarray:
        b = self._theta(theta)[0]
        self._require_support(b)
        r = self._residual(b)
        return np.array([float(np.sum(-r * (self._z1 * self._z1 - 100.0)))])

    def metric(self, theta) -> np.ndarray:
        b = self._theta(theta)[0]
        self._require_support(b)
        return np.array([[self._n * (_INFO_CONST + _INFO_QUAD * b * b)]])

    def metric_partials(self, theta) -> np.ndarray:
        b = self._theta(theta)[0]
        self._require_support(b)
        return np.array([[[self._n * 2.0 * _INFO_QUAD * b]]])

    def sample_score_observations(self, theta, n: int, rng) -> np.ndarray:
        w = rng.standard_normal((n, 2))
        return np.column_stack([10.0 * w[:, 0], w[:, 1]])

    def score(self, theta, observations) -> np.ndarray:
        b = self._theta(theta)[0]
        obs = np.asarray(observations, dtype=float)
        z1, z2 = obs[:, 0], obs[:, 1]
        r = z2 + b * z1 * z1 - 100.0 * b
        return (-r * (z1 * z1 - 100.0))[:, None]

    def _require_support(self, b: float) -> None:
        if not self.prior.contains(np.array([b])):
            raise DomainError(f"twist={b} outside support {self.prior}")
