"""SPD linear algebra and connection primitives shared by the samplers.

Conventions used throughout the package:

* A metric is a dense symmetric positive definite ``(d, d)`` array.
* Metric partial derivatives are a ``(d, d, d)`` array with
  ``partials[r] == dG/dtheta_r``.
* Christoffel symbols follow the contraction used by the closed-form model
  derivations, ``gamma[k, i, j] = g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)``,
  so in one dimension ``gamma = G' / G``.  The connection drift applied by
  the geometric samplers is ``c^i = -1/2 (g^{-1})_{kl} gamma^i_{kl}``; with
  these two conventions together the one-dimensional scale model works out
  to the drift correction ``+ sigma / (4N)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import DimensionError, InputError, NumericError

SPD_FLOOR = 1e-10

_LOG_2PI = math.log(2.0 * math.pi)


def _as_square(m, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericError(f"{name} contains non-finite entries")
    return m


def _symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def spd_repair(m, floor: float = SPD_FLOOR) -> np.ndarray:
    """Symmetrize ``m`` and clamp its eigenvalues below at ``floor``.

    Matrices whose smallest eigenvalue is already at or above the floor
    (within machine precision relative to the matrix scale) are returned
    after symmetrization only, which makes the repair bitwise idempotent.
    """
    m = _as_square(m, "m")
    if not floor > 0.0:
        raise InputError(f"floor must be positive, got {floor}")
    sym = _symmetrize(m)
    evals, evecs = np.linalg.eigh(sym)
    slack = 16.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(evals))))
    if float(evals[0]) >= floor - slack:
        return sym
    clamped = np.maximum(evals, floor)
    out = (evecs * clamped) @ evecs.T
    return _symmetrize(out)


def sqrt_inverse(g, floor: float = SPD_FLOOR) -> np.ndarray:
    """Symmetric spectral square root S of the inverse metric, S @ S = g^-1."""
    g = _as_square(g, "g")
    sym = _symmetrize(g)
    evals, evecs = np.linalg.eigh(sym)
    clamped = np.maximum(evals, floor)
    if float(clamped[0]) <= 0.0:
        raise NumericError("metric is singular after repair")
    s = (evecs / np.sqrt(clamped)) @ evecs.T
    return _symmetrize(s)


def _spd_inverse_from_eigh(evals: np.ndarray, evecs: np.ndarray) -> np.ndarray:
    return _symmetrize((evecs / evals) @ evecs.T)


def christoffel(g, partials) -> np.ndarray:
    """Christoffel symbols ``gamma[k, i, j]`` for a metric and its partials.

    ``gamma[k, i, j] = g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)``; the result
    is exactly symmetric in ``(i, j)``.
    """
    g = _as_square(g, "g")
    d = g.shape[0]
    partials = np.asarray(partials, dtype=float)
    if partials.shape != (d, d, d):
        raise DimensionError(
            f"partials must have shape {(d, d, d)}, got {partials.shape}"
        )
    evals, evecs = np.linalg.eigh(_symmetrize(g))
    clamped = np.maximum(evals, SPD_FLOOR)
    inv = _spd_inverse_from_eigh(clamped, evecs)
    return _christoffel_from_inverse(inv, partials)


def _christoffel_from_inverse(g_inv: np.ndarray, partials: np.ndarray) -> np.ndarray:
    # term[i, j, l] = d_i g_jl + d_j g_il - d_l g_ij, from p[r, a, b] = d_r g_ab.
    p = 0.5 * (partials + partials.transpose(0, 2, 1))
    term = p + np.transpose(p, (1, 0, 2)) - np.transpose(p, (1, 2, 0))
    gamma = np.einsum("kl,ijl->kij", g_inv, term)
    # The lower-index symmetry is exact mathematics; enforce it bitwise.
    return 0.5 * (gamma + gamma.transpose(0, 2, 1))


def connection_drift(g_inv, gamma) -> np.ndarray:
    """Drift correction ``c^i = -1/2 (g^-1)_{kl} gamma^i_{kl}``."""
    g_inv = _as_square(g_inv, "g_inv")
    gamma = np.asarray(gamma, dtype=float)
    d = g_inv.shape[0]
    if gamma.shape != (d, d, d):
        raise DimensionError(f"gamma must have shape {(d, d, d)}, got {gamma.shape}")
    return -0.5 * np.einsum("kl,ikl->i", g_inv, gamma)


def log_gaussian_density(x, mean, cov) -> float:
    """Log density of N(mean, cov) at x, normalizing constant included."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    cov = _as_square(cov, "cov")
    d = cov.shape[0]
    if x.shape != (d,) or mean.shape != (d,):
        raise DimensionError("x, mean, and cov dimensions do not agree")
    try:
        factor = cho_factor(_symmetrize(cov), lower=True)
    except LinAlgError as exc:
        raise NumericError("covariance is not positive definite") from exc
    r = x - mean
    z = cho_solve(factor, r)
    log_det = 2.0 * float(np.sum(np.log(np.diag(factor[0]))))
    return -0.5 * (d * _LOG_2PI + log_det + float(r @ z))


@dataclass(frozen=True)
class MetricBundle:
    """Everything the geometric samplers need at one parameter point.

    ``sqrt_inverse @ sqrt_inverse.T`` reproduces ``inverse``;
    ``connection`` is the contraction ``-1/2 (g^-1)_{kl} gamma^i_{kl}`` and
    ``inverse_divergence`` is ``1/2 sum_j d(g^-1)_{ij}/dtheta_j``, the drift
    completion for inverse-metric-shaped noise.
    """

    metric: np.ndarray
    inverse: np.ndarray
    sqrt_inverse: np.ndarray
    partials: np.ndarray
    christoffel: np.ndarray
    connection: np.ndarray
    inverse_divergence: np.ndarray

    @property
    def dim(self) -> int:
        return self.metric.shape[0]


def build_bundle(metric, partials, floor: float = SPD_FLOOR) -> MetricBundle:
    """Assemble a :class:`MetricBundle` from a raw metric and its partials."""
    repaired = spd_repair(metric, floor)
    d = repaired.shape[0]
    partials = np.asarray(partials, dtype=float)
    if partials.shape != (d, d, d):
        raise DimensionError(
            f"partials must have shape {(d, d, d)}, got {partials.shape}"
        )
    evals, evecs = np.linalg.eigh(repaired)
    clamped = np.maximum(evals, floor)
    inverse = _spd_inverse_from_eigh(clamped, evecs)
    sqrt_inv = _symmetrize((evecs / np.sqrt(clamped)) @ evecs.T)
    p = 0.5 * (partials + partials.transpose(0, 2, 1))
    gamma = _christoffel_from_inverse(inverse, p)
    connection = -0.5 * np.einsum("kl,ikl->i", inverse, gamma)
    d_inv = -np.einsum("ij,rjk,kl->ril", inverse, p, inverse)
    inv_div = 0.5 * np.einsum("rir->i", d_inv)
    return MetricBundle(
        metric=repaired,
        inverse=inverse,
        sqrt_inverse=sqrt_inv,
        partials=p,
        christoffel=gamma,
        connection=connection,
        inverse_divergence=inv_div,
    )


def fd_step(value: float, scale: float = 1e-5) -> float:
    """Central-difference step, ``scale * max(1, |value|)``."""
    return scale * max(1.0, abs(float(value)))


def finite_difference_gradient(f, theta, scale: float = 1e-5) -> np.ndarray:
    """Central finite differences of a scalar function of a vector."""
    theta = np.asarray(theta, dtype=float)
    grad = np.zeros_like(theta)
    for r in range(theta.size):
        h = fd_step(theta[r], scale)
        hi = theta.copy()
        lo = theta.copy()
        hi[r] += h
        lo[r] -= h
        grad[r] = (f(hi) - f(lo)) / (2.0 * h)
    return grad


def finite_difference_partials(matrix_fn, theta, scale: float = 1e-5) -> np.ndarray:
    """Central finite differences of a matrix-valued function of a vector.

    Returns a ``(d, n, n)`` array with entry ``[r]`` the derivative along
    ``theta_r``; each slice is exactly symmetrized.
    """
    theta = np.asarray(theta, dtype=float)
    d = theta.size
    base = np.asarray(matrix_fn(theta), dtype=float)
    out = np.zeros((d,) + base.shape)
    for r in range(d):
        h = fd_step(theta[r], scale)
        hi = theta.copy()
        lo = theta.copy()
        hi[r] += h
        lo[r] -= h
        diff = (np.asarray(matrix_fn(hi)) - np.asarray(matrix_fn(lo))) / (2.0 * h)
        out[r] = 0.5 * (diff + diff.T)
    return out


def fpe_residual_1d(drift, diffusion_sq, density, metric, grid) -> np.ndarray:
    """Stationarity residual of a 1-D diffusion on a curved sample space.

    Evaluates, with second-order central differences on a uniform grid,

        R = (1 / (2 sqrt(g))) d/dx [ sqrt(g) u p' ]
            - (1 / sqrt(g)) d/dx [ p sqrt(g) (a + (1/2) g^-1 gamma) ]

    where ``a`` is the supplied drift, ``u`` the supplied squared diffusion,
    ``p`` the candidate density, ``g`` the metric, and ``gamma = g'/g`` the
    1-D connection in the package convention.  A zero residual means ``p``
    is stationary for the drift under this equation.  The returned vector
    covers the grid points two layers inside each boundary (the nested
    stencil needs two neighbours).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 5:
        raise InputError("grid must be one-dimensional with at least 5 points")
    steps = np.diff(grid)
    if np.any(steps <= 0):
        raise InputError("grid must be strictly increasing")
    h = float(steps[0])
    if not np.allclose(steps, h, rtol=1e-8, atol=0.0):
        raise InputError("grid must be uniformly spaced")

    a = np.array([float(drift(x)) for x in grid])
    u = np.array([float(diffusion_sq(x)) for x in grid])
    p = np.array([float(density(x)) for x in grid])
    g = np.array([float(metric(x)) for x in grid])
    for name, arr in (("drift", a), ("diffusion_sq", u), ("density", p), ("metric", g)):
        if not np.all(np.isfinite(arr)):
            raise NumericError(f"{name} is not finite on the grid")
    if np.any(g <= 0.0):
        raise NumericError("metric must be positive on the grid")

    sg = np.sqrt(g)

    def _central(values: np.ndarray) -> np.ndarray:
        return (values[2:] - values[:-2]) / (2.0 * h)

    p_prime = _central(p)                   # on grid[1:-1]
    g_prime = _central(g)                   # on grid[1:-1]
    gamma = g_prime / g[1:-1]

    flux_diffusion = sg[1:-1] * u[1:-1] * p_prime
    bracket = a[1:-1] + 0.5 * gamma / g[1:-1]
    flux_drift = p[1:-1] * sg[1:-1] * bracket

    inner = slice(2, -2)
    term1 = _central(flux_diffusion) / (2.0 * sg[inner])
    term2 = _central(flux_drift) / sg[inner]
    return term1 - term2
