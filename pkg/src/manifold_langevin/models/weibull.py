"""Scale and shape estimation for Weibull-distributed lifetimes.

Per observation z > 0 with scale lam and shape k the log-likelihood is
ln k - k ln lam + (k - 1) ln z - (z/lam)^k, and the score components are

    d/dlam: ((z/lam)^k - 1) * k / lam
    d/dk:   1/k + ln(z/lam) * (1 - (z/lam)^k)

The expectations defining the information matrix and its parameter
derivatives have no convenient closed form, so they are estimated from a
fresh seeded Monte-Carlo draw; derivative expectations differentiate the
integrands with the sample held fixed, which matches the closed-form
expansion used by the benchmark.  Sampling goes through the inverse CDF, so
the pivot t = (x/lam)^k is exactly Exp(1)-distributed for any parameters.
"""

from __future__ import annotations

import math
from typing import Dict

import numpy as np

from ..errors import DomainError, InputError
from .base import NEG_INF, TargetModel, UniformBoxPrior

DEFAULT_EXPECTATION_DRAWS = 2000


def weibull_expectations(lam: float, k: float, n_draws: int, seed: int) -> Dict[str, float]:
    """Monte-Carlo expectation table for the information matrix pieces.

    Keys ``g11 .. dg22_dk`` are the single-observation information entries
    and their lam/k derivatives; ``t``, ``t_minus_1``, ``t_minus_1_sq`` and
    ``k_score_sq`` expose the primitive expectations directly.
    """
    if lam <= 0 or k <= 0:
        raise DomainError(f"scale and shape must be positive, got ({lam}, {k})")
    if n_draws < 1:
        raise InputError(f"n_draws must be positive, got {n_draws}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    u = rng.random(n_draws)
    u = np.where(u == 0.0, 2.0**-53, u)
    t = -np.log(u)                 # (x/lam)^k, exactly Exp(1) under the draw
    w = np.log(t) / k              # ln(x/lam)

    a = k / lam
    g_lam = a * (t - 1.0)
    g_k = 1.0 / k + w * (1.0 - t)

    # Derivatives with the sampled observations held fixed:
    # dT/dlam = -(k/lam) T, dT/dk = T W, dW/dlam = -1/lam, dW/dk = 0.
    d_glam_dlam = -(a / lam) * (t - 1.0) - (a * k / lam) * t
    d_glam_dk = (t - 1.0) / lam + a * t * w
    d_gk_dlam = (k * t * w + t - 1.0) / lam
    d_gk_dk = -1.0 / (k * k) - t * w * w

    mean = lambda arr: float(np.mean(arr))
    return {
        "t": mean(t),
        "t_minus_1": mean(t - 1.0),
        "t_minus_1_sq": mean((t - 1.0) ** 2),
        "k_score_sq": mean(g_k * g_k),
        "g11": mean(g_lam * g_lam),
        "g12": mean(g_lam * g_k),
        "g22": mean(g_k * g_k),
        "dg11_dlam": 2.0 * mean(g_lam * d_glam_dlam),
        "dg12_dlam": mean(d_glam_dlam * g_k + g_lam * d_gk_dlam),
        "dg22_dlam": 2.0 * mean(g_k * d_gk_dlam),
        "dg11_dk": 2.0 * mean(g_lam * d_glam_dk),
        "dg12_dk": mean(d_glam_dk * g_k + g_lam * d_gk_dk),
        "dg22_dk": 2.0 * mean(g_k * d_gk_dk),
    }


class WeibullModel(TargetModel):
    name = "weibull"
    dim = 2

    def __init__(
        self,
        observations,
        expectation_draws: int = DEFAULT_EXPECTATION_DRAWS,
        expectation_seed: int = 0,
        support: tuple[tuple[float, float], tuple[float, float]] = ((0.1, 10.0), (0.1, 10.0)),
    ):
        z = np.asarray(observations, dtype=float).reshape(-1)
        if z.size < 1:
            raise InputError("need at least one observation")
        if np.any(z <= 0) or not np.all(np.isfinite(z)):
            raise InputError("observations must be positive and finite")
        if expectation_draws < 1:
            raise InputError(f"expectation_draws must be positive, got {expectation_draws}")
        self._z = z
        self._n = z.size
        self._log_z = np.log(z)
        self._sum_log_z = float(np.sum(self._log_z))
        self.expectation_draws = int(expectation_draws)
        self.expectation_seed = int(expectation_seed)
        (lam_lo, lam_hi), (k_lo, k_hi) = support
        self.prior = UniformBoxPrior((lam_lo, k_lo), (lam_hi, k_hi))

    @property
    def n_observations(self) -> int:
        return self._n

    @property
    def observations(self) -> np.ndarray:
        return self._z

    def step_variant(self, seed: int) -> "WeibullModel":
        clone = object.__new__(WeibullModel)
        clone.__dict__.update(self.__dict__)
        clone.expectation_seed = int(seed)
        return clone

    def log_posterior(self, theta) -> float:
        lam, k = self._theta(theta)
        if not self.prior.contains(np.array([lam, k])):
            return NEG_INF
        pow_term = float(np.sum(np.power(self._z / lam, k)))
        return (
            self._n * (math.log(k) - k * math.log(lam))
            + (k - 1.0) * self._sum_log_z
            - pow_term
        )

    def gradient(self, theta) -> np.ndarray:
        lam, k = self._theta(theta)
        self._require_support(lam, k)
        t = np.power(self._z / lam, k)
        w = self._log_z - math.log(lam)
        d_lam = float(np.sum((t - 1.0) * (k / lam)))
        d_k = float(np.sum(1.0 / k + w * (1.0 - t)))
        return np.array([d_lam, d_k])

    def _table(self, lam: float, k: float) -> Dict[str, float]:
        return weibull_expectations(lam, k, self.expectation_draws, self.expectation_seed)

    def metric(self, theta) -> np.ndarray:
        lam, k = self._theta(theta)
        self._require_support(lam, k)
        e = self._table(lam, k)
        return self._n * np.array([[e["g11"], e["g12"]], [e["g12"], e["g22"]]])

    def metric_partials(self, theta) -> np.ndarray:
        lam, k = self._theta(theta)
        self._require_support(lam, k)
        e = self._table(lam, k)
        d_lam = np.array([[e["dg11_dlam"], e["dg12_dlam"]], [e["dg12_dlam"], e["dg22_dlam"]]])
        d_k = np.array([[e["dg11_dk"], e["dg12_dk"]], [e["dg12_dk"], e["dg22_dk"]]])
        return self._n * np.stack([d_lam, d_k])

    def _require_support(self, lam: float, k: float) -> None:
        if not self.prior.contains(np.array([lam, k])):
            raise DomainError(f"(lam, k)=({lam}, {k}) outside support {self.prior}")
