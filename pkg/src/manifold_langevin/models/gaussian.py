"""Joint mean and covariance estimation for multivariate Gaussian data.

The parameter vector stacks the mean with the lower triangle of the
covariance read row by row including the diagonal,

    theta = (mu_1 .. mu_d, S_11, S_21, S_22, S_31, ..., S_dd),

giving D = (d^2 + 3d) / 2 parameters.  With U = Sigma^-1 the information
matrix is exactly block diagonal: the mean block equals U and the
covariance block is

    B_ij = (U_{p_i p_j} U_{q_i q_j} + U_{p_i q_j} U_{p_j q_i}) / 4

for lower-triangle pairs (p_i, q_i).  Covariance-block components enter B
once per pair (no doubling of off-diagonal components), while the chain
gradient uses the symmetric chain rule (off-diagonal derivatives doubled)
so that finite differences of the log-posterior reproduce it.  The score
hook feeding the Monte-Carlo information oracle uses the same one-sided
convention as B.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, InputError
from .base import NEG_INF, TargetModel, UniformBoxPrior

_LOG_2PI = math.log(2.0 * math.pi)
SPD_TOL = 1e-10


class GaussianParamIndex:
    """Bijection between flat parameter indices and (mu | lower-tri Sigma) slots."""

    def __init__(self, data_dim: int):
        if data_dim < 1:
            raise InputError(f"data dimension must be positive, got {data_dim}")
        self.data_dim = data_dim
        self.pairs = [(p, q) for p in range(data_dim) for q in range(p + 1)]
        self.n_params = data_dim + len(self.pairs)

    def is_mean_index(self, i: int) -> bool:
        return 0 <= i < self.data_dim

    def pair(self, i: int) -> tuple[int, int]:
        """Lower-triangle (row, col) slot of flat covariance index i."""
        if not self.data_dim <= i < self.n_params:
            raise InputError(f"index {i} is not a covariance component")
        return self.pairs[i - self.data_dim]

    def flat_index(self, p: int, q: int) -> int:
        """Flat index of covariance slot (p, q), p >= q."""
        if not 0 <= q <= p < self.data_dim:
            raise InputError(f"({p}, {q}) is not a lower-triangle slot")
        return self.data_dim + p * (p + 1) // 2 + q

    def build_covariance(self, flat: np.ndarray) -> np.ndarray:
        d = self.data_dim
        sigma = np.zeros((d, d))
        for (p, q), value in zip(self.pairs, flat):
            sigma[p, q] = value
            sigma[q, p] = value
        return sigma


class GaussianModel(TargetModel):
    name = "gaussian"

    def __init__(
        self,
        observations,
        mean_bound: float = 100.0,
        diag_bounds: tuple[float, float] = (1e-3, 1e3),
        offdiag_bound: float = 1e3,
    ):
        y = np.asarray(observations, dtype=float)
        if y.ndim != 2 or y.shape[0] < 1:
            raise InputError(f"observations must have shape (n, d), got {y.shape}")
        if not np.all(np.isfinite(y)):
            raise InputError("observations must be finite")
        self._y = y
        self._n, self._d = y.shape
        self.index = GaussianParamIndex(self._d)
        self.dim = self.index.n_params
        self._pair_p = np.array([p for p, _ in self.index.pairs])
        self._pair_q = np.array([q for _, q in self.index.pairs])

        d = self._d
        lower = [-mean_bound] * d
        upper = [mean_bound] * d
        for p, q in self.index.pairs:
            if p == q:
                lower.append(diag_bounds[0])
                upper.append(diag_bounds[1])
            else:
                lower.append(-offdiag_bound)
                upper.append(offdiag_bound)
        self.prior = UniformBoxPrior(tuple(lower), tuple(upper))

    @property
    def n_observations(self) -> int:
        return self._n

    @property
    def data_dim(self) -> int:
        return self._d

    @property
    def observations(self) -> np.ndarray:
        return self._y

    # -- internal ------------------------------------------------------------

    def _split(self, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        theta = self._theta(theta)
        mu = theta[: self._d]
        sigma = self.index.build_covariance(theta[self._d :])
        return mu, sigma

    def _decompose(self, sigma: np.ndarray):
        evals, evecs = np.linalg.eigh(sigma)
        if float(evals[0]) < SPD_TOL:
            return None
        u = (evecs / evals) @ evecs.T
        u = 0.5 * (u + u.T)
        log_det = float(np.sum(np.log(evals)))
        return u, log_det

    def _require_inside(self, theta: np.ndarray):
        theta = self._theta(theta)
        if not self.prior.contains(theta):
            raise DomainError("parameters outside the prior box")
        mu, sigma = self._split(theta)
        dec = self._decompose(sigma)
        if dec is None:
            raise DomainError("implied covariance is not positive definite")
        return mu, sigma, dec

    # -- interface -----------------------------------------------------------

    def log_posterior(self, theta) -> float:
        theta = self._theta(theta)
        if not self.prior.contains(theta):
            return NEG_INF
        mu, sigma = self._split(theta)
        dec = self._decompose(sigma)
        if dec is None:
            return NEG_INF
        u, log_det = dec
        r = self._y - mu
        quad = float(np.sum((r @ u) * r))
        return -0.5 * self._n * (self._d * _LOG_2PI + log_det) - 0.5 * quad

    def gradient(self, theta) -> np.ndarray:
        mu, _, (u, _) = self._require_inside(theta)
        r = self._y - mu
        grad_mu = u @ r.sum(axis=0)
        scatter = r.T @ r
        m = -0.5 * self._n * u + 0.5 * (u @ scatter @ u)
        grad_sigma = np.array(
            [
                m[p, q] if p == q else 2.0 * m[p, q]
                for p, q in self.index.pairs
            ]
        )
        return np.concatenate([grad_mu, grad_sigma])

    def _covariance_block(self, u: np.ndarray) -> np.ndarray:
        ip, iq = self._pair_p, self._pair_q
        return 0.25 * (
            u[np.ix_(ip, ip)] * u[np.ix_(iq, iq)]
            + u[np.ix_(ip, iq)] * u[np.ix_(iq, ip)]
        )

    def metric(self, theta) -> np.ndarray:
        _, _, (u, _) = self._require_inside(theta)
        g = np.zeros((self.dim, self.dim))
        g[: self._d, : self._d] = u
        g[self._d :, self._d :] = self._covariance_block(u)
        return self._n * g

    def metric_partials(self, theta) -> np.ndarray:
        _, _, (u, _) = self._require_inside(theta)
        d = self._d
        ip, iq = self._pair_p, self._pair_q
        upp = u[np.ix_(ip, ip)]
        uqq = u[np.ix_(iq, iq)]
        upq = u[np.ix_(ip, iq)]
        uqp = u[np.ix_(iq, ip)]
        partials = np.zeros((self.dim, self.dim, self.dim))
        # The metric does not depend on the mean, so mean directions vanish.
        for r, (k, l) in enumerate(self.index.pairs):
            uk = u[:, k]
            ul = u[:, l]
            if k == l:
                du = -np.outer(uk, uk)
            else:
                du = -(np.outer(uk, ul) + np.outer(ul, uk))
            dpp = du[np.ix_(ip, ip)]
            dqq = du[np.ix_(iq, iq)]
            dpq = du[np.ix_(ip, iq)]
            dqp = du[np.ix_(iq, ip)]
            block = 0.25 * (dpp * uqq + upp * dqq + dpq * uqp + upq * dqp)
            slot = d + r
            partials[slot, :d, :d] = du
            partials[slot, d:, d:] = block
        return self._n * partials

    # -- Monte-Carlo oracle hooks ---------------------------------------------

    def sample_score_observations(self, theta, n: int, rng) -> np.ndarray:
        mu, sigma, _ = self._require_inside(theta)
        factor = np.linalg.cholesky(sigma)
        return mu + rng.standard_normal((n, self._d)) @ factor.T

    def score(self, theta, observations) -> np.ndarray:
        mu, _, (u, _) = self._require_inside(theta)
        y = np.asarray(observations, dtype=float)
        z = (y - mu) @ u
        mean_part = z
        cov_part = 0.5 * (
            z[:, self._pair_p] * z[:, self._pair_q] - u[self._pair_p, self._pair_q]
        )
        return np.hstack([mean_part, cov_part])
