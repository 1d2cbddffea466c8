"""Small synthetic targets and utilities shared by the tests."""

from __future__ import annotations

import numpy as np

from manifold_langevin.models.base import TargetModel, UniformBoxPrior


class QuadraticModel(TargetModel):
    """Standard-normal target with a configurable constant metric."""

    name = "quadratic"

    def __init__(self, dim: int = 1, metric_scale: float = 1.0):
        self.dim = dim
        self.metric_scale = metric_scale
        self.prior = UniformBoxPrior((-1e6,) * dim, (1e6,) * dim)

    @property
    def n_observations(self) -> int:
        return 1

    def log_posterior(self, theta) -> float:
        theta = self._theta(theta)
        return -0.5 * float(theta @ theta)

    def gradient(self, theta) -> np.ndarray:
        return -self._theta(theta)

    def metric(self, theta) -> np.ndarray:
        return self.metric_scale * np.eye(self.dim)

    def metric_partials(self, theta) -> np.ndarray:
        return np.zeros((self.dim, self.dim, self.dim))


class FlatModel(TargetModel):
    """Zero potential: free-particle dynamics."""

    name = "flat"

    def __init__(self, dim: int = 1):
        self.dim = dim
        self.prior = UniformBoxPrior((-1e9,) * dim, (1e9,) * dim)

    @property
    def n_observations(self) -> int:
        return 1

    def log_posterior(self, theta) -> float:
        self._theta(theta)
        return 0.0

    def gradient(self, theta) -> np.ndarray:
        return np.zeros(self.dim)

    def metric(self, theta) -> np.ndarray:
        return np.eye(self.dim)

    def metric_partials(self, theta) -> np.ndarray:
        return np.zeros((self.dim, self.dim, self.dim))


def random_spd(rng: np.random.Generator, dim: int, jitter: float = 0.1) -> np.ndarray:
    a = rng.standard_normal((dim, dim))
    return a @ a.T + jitter * np.eye(dim)


def gaussian_theta(mu, sigma) -> np.ndarray:
    """Flatten (mean, covariance) into the model's parameter layout."""
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    parts = list(mu)
    for p in range(mu.size):
        for q in range(p + 1):
            parts.append(sigma[p, q])
    return np.array(parts)
