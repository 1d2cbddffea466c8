"""Uniform interface shared by the parameter-estimation targets."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from ..rng import data_generator

NEG_INF = float("-inf")


@dataclass(frozen=True)
class UniformBoxPrior:
    """Flat prior on an axis-aligned box; zero gradient and metric inside."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def contains(self, theta: np.ndarray) -> bool:
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return bool(np.all(theta > lo) and np.all(theta < hi))


@dataclass(frozen=True)
class GaussianPrior:
    """Zero-mean isotropic Gaussian prior N(0, variance_scale * I)."""

    variance_scale: float

    def contains(self, theta: np.ndarray) -> bool:
        return bool(np.all(np.isfinite(theta)))


class TargetModel(ABC):
    """A posterior with analytic gradient, Fisher metric, and metric partials.

    Models are immutable after construction; all methods are pure.  The
    log-posterior drops additive constants only when the gradient drops them
    too, and returns ``-inf`` (never raises) outside the prior support.
    """

    name: str = "target"
    dim: int = 0

    @property
    @abstractmethod
    def n_observations(self) -> int:
        ...

    @abstractmethod
    def log_posterior(self, theta) -> float:
        ...

    @abstractmethod
    def gradient(self, theta) -> np.ndarray:
        ...

    @abstractmethod
    def metric(self, theta) -> np.ndarray:
        ...

    @abstractmethod
    def metric_partials(self, theta) -> np.ndarray:
        ...

    def step_variant(self, seed: int) -> "TargetModel":
        """Model view for one chain step.

        Deterministic-metric models return ``self``; models whose metric is
        estimated by Monte Carlo return a copy pinned to ``seed`` so that
        the forward and reverse evaluations inside a step share one draw.
        """
        return self

    # Hooks for the Monte-Carlo information-matrix oracle -------------------

    def sample_score_observations(self, theta, n: int, rng) -> np.ndarray:
        """Synthetic observations under the law the information formula averages over."""
        raise NotImplementedError(f"{self.name} has no score-sampling hook")

    def score(self, theta, observations) -> np.ndarray:
        """Per-observation likelihood score, shape (n, dim).

        Uses the same component convention as :meth:`metric`, which for
        matrix-valued parameter blocks may differ from the chain gradient's
        symmetrized chain rule.
        """
        raise NotImplementedError(f"{self.name} has no score hook")

    def _theta(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float).reshape(-1)
        if theta.shape != (self.dim,):
            raise InputError(
                f"{self.name} expects {self.dim} parameters, got shape {theta.shape}"
            )
        return theta


def monte_carlo_metric_oracle(model: TargetModel, theta, n_draws: int, seed: int) -> np.ndarray:
    """Empirical Fisher information: mean of score outer products, times N.

    A direct estimate of the defining expectation E[(grad L)(grad L)^T] from
    fresh synthetic observations; used as a test oracle for the analytic
    metric (data term only; prior contributions are not sampled).
    """
    if n_draws < 100:
        raise InputError(f"n_draws must be at least 100, got {n_draws}")
    rng = data_generator(seed)
    obs = model.sample_score_observations(theta, n_draws, rng)
    sc = np.asarray(model.score(theta, obs), dtype=float)
    return model.n_observations * (sc.T @ sc) / float(n_draws)
