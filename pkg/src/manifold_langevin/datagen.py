"""Seeded synthetic-observation generators for the benchmark targets.

Every generator is a pure function of its arguments: the same seed yields a
bitwise-identical dataset.  Inverse-CDF generators consume exactly one
uniform per draw, so datasets do not depend on batch size.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DomainError, InputError, NumericError
from .rng import data_generator

_TINY_UNIFORM = 2.0 ** -53


class LogisticData(NamedTuple):
    """Design matrix (n, d_features) and binary responses (n,)."""

    features: np.ndarray
    responses: np.ndarray


def _positive_uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.random(n)
    # random() lands in [0, 1); keep the inverse CDFs finite at the corner.
    return np.where(u == 0.0, _TINY_UNIFORM, u)


def _check_count(n: int) -> None:
    if int(n) != n or n < 1:
        raise InputError(f"observation count must be a positive integer, got {n}")


def rayleigh_from_uniform(u, sigma: float) -> np.ndarray:
    """Inverse CDF of the Rayleigh distribution, x = sigma sqrt(-2 ln u)."""
    return sigma * np.sqrt(-2.0 * np.log(u))


def weibull_from_uniform(u, lam: float, k: float) -> np.ndarray:
    """Inverse CDF of the Weibull distribution, x = lam (-ln u)^(1/k)."""
    return lam * np.power(-np.log(u), 1.0 / k)


def gen_rayleigh(sigma: float, n: int, seed: int) -> np.ndarray:
    """Rayleigh(sigma) observations, shape (n,)."""
    if sigma <= 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    _check_count(n)
    u = _positive_uniforms(data_generator(seed), n)
    return rayleigh_from_uniform(u, sigma)


def gen_banana(b: float, n: int, seed: int) -> np.ndarray:
    """Twisted-Gaussian pairs, shape (n, 2).

    Draws (w1, w2) ~ N(0, diag(100, 1)) and applies the unit-Jacobian shear
    z = (w1, w2 - b w1^2 + 100 b), which gives the pair the density
    proportional to exp(-z1^2/200 - (z2 + b z1^2 - 100 b)^2 / 2).
    """
    if not np.isfinite(b):
        raise DomainError(f"twist must be finite, got {b}")
    _check_count(n)
    w = data_generator(seed).standard_normal((n, 2))
    z1 = 10.0 * w[:, 0]
    z2 = w[:, 1] - b * z1 * z1 + 100.0 * b
    return np.column_stack([z1, z2])


def gen_weibull(lam: float, k: float, n: int, seed: int) -> np.ndarray:
    """Weibull(lam, k) observations, shape (n,)."""
    if lam <= 0 or k <= 0:
        raise DomainError(f"scale and shape must be positive, got ({lam}, {k})")
    _check_count(n)
    u = _positive_uniforms(data_generator(seed), n)
    return weibull_from_uniform(u, lam, k)


def gen_mvn(mean, cov, n: int, seed: int) -> np.ndarray:
    """Multivariate normal observations via a Cholesky factor, shape (n, d)."""
    mean = np.asarray(mean, dtype=float)
    cov = np.asarray(cov, dtype=float)
    _check_count(n)
    try:
        factor = np.linalg.cholesky(0.5 * (cov + cov.T))
    except np.linalg.LinAlgError as exc:
        raise NumericError("covariance is not positive definite") from exc
    z = data_generator(seed).standard_normal((n, mean.size))
    return mean + z @ factor.T


def gen_logreg(
    beta,
    n: int,
    d_features: int,
    feature_low: float = -1.0,
    feature_high: float = 1.0,
    seed: int = 0,
) -> LogisticData:
    """Uniform features plus Bernoulli responses from a logistic law.

    ``beta`` has length ``d_features + 1``; its first entry multiplies the
    intercept column prepended to every feature vector.
    """
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (d_features + 1,):
        raise InputError(
            f"beta must have length {d_features + 1}, got shape {beta.shape}"
        )
    if not feature_low < feature_high:
        raise InputError(
            f"feature bounds must satisfy low < high, got ({feature_low}, {feature_high})"
        )
    _check_count(n)
    rng = data_generator(seed)
    x = rng.uniform(feature_low, feature_high, size=(n, d_features))
    logits = beta[0] + x @ beta[1:]
    prob = 1.0 / (1.0 + np.exp(-logits))
    t = (rng.random(n) < prob).astype(float)
    return LogisticData(features=x, responses=t)


def logreg_pattern_beta(
    n_coefficients: int,
    seed: int,
    positive_range: tuple[float, float] = (0.0, 15.0),
    negative_range: tuple[float, float] = (-15.0, -10.0),
    negative_fraction: float = 1.0 / 6.0,
) -> np.ndarray:
    """Regression coefficients with a fixed fraction drawn negative.

    Mirrors the benchmark's construction: most coefficients uniform in
    ``positive_range``, the trailing rounded fraction uniform in
    ``negative_range``.
    """
    if n_coefficients < 1:
        raise InputError("need at least one coefficient")
    rng = data_generator(seed)
    n_neg = int(round(n_coefficients * negative_fraction))
    n_neg = min(max(n_neg, 0), n_coefficients)
    beta = rng.uniform(positive_range[0], positive_range[1], size=n_coefficients)
    if n_neg:
        beta[-n_neg:] = rng.uniform(negative_range[0], negative_range[1], size=n_neg)
    return beta


# ---------------------------------------------------------------------------
# Observation CSV format: one observation per row, a required header row, and
# a leading comment line recording provenance.


_COLUMNS = {
    "rayleigh": lambda d: ["z1"],
    "weibull": lambda d: ["z1"],
    "banana": lambda d: ["z1", "z2"],
    "gaussian": lambda d: [f"z{i + 1}" for i in range(d)],
    "logreg": lambda d: [f"x{i + 1}" for i in range(d)] + ["t"],
}


def observation_columns(kind: str, data_dim: int) -> list[str]:
    if kind not in _COLUMNS:
        raise InputError(f"unknown model kind {kind!r}")
    return _COLUMNS[kind](data_dim)


def write_observations(path, kind: str, table: np.ndarray, seed=None) -> None:
    """Write an observation table with header and provenance comment."""
    table = np.asarray(table, dtype=float)
    if table.ndim == 1:
        table = table[:, None]
    columns = observation_columns(kind, table.shape[1] if kind != "logreg" else table.shape[1] - 1)
    if len(columns) != table.shape[1]:
        raise InputError(
            f"{kind} observations need {len(columns)} columns, got {table.shape[1]}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# model={kind} seed={seed if seed is not None else 'external'}\n")
        fh.write(",".join(columns) + "\n")
        for row in table:
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")


def read_observations(path, kind: str) -> np.ndarray:
    """Read an observation table written by :func:`write_observations`."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise InputError(f"no observation rows in {path}")
    header = [c.strip() for c in lines[0].split(",")]
    expected = observation_columns(kind, len(header) if kind != "logreg" else len(header) - 1)
    if header != expected:
        raise InputError(
            f"{path} header {header} does not match {kind} columns {expected}"
        )
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    table = np.asarray(rows, dtype=float)
    if table.ndim != 2 or table.shape[1] != len(header):
        raise InputError(f"ragged observation rows in {path}")
    return table
