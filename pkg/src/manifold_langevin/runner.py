"""Multi-chain execution, warmup detection, and run statistics.

Warmup follows the tolerance-tube rule: the first index from which every
later sample stays within ``rel_tol * max(1, |theta_true|_inf)`` of the true
parameter in the infinity norm, indices 1-based with the initial point at
index 1.  Means and unbiased sample variances are taken over a fixed count
of samples immediately after warmup; acceptance is counted over the whole
chain.  Cross-chain aggregation reports min / median / max with the median
of an even count taken as the lower-middle element, so every reported value
is one that actually occurred.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionError, InputError
from .models.base import TargetModel
from .rng import init_generator
from .samplers import SamplerConfig, chain_step, init_chain_state


@dataclass
class ChainRecord:
    samples: np.ndarray          # (K, d), row 0 is the initial point
    accepted: np.ndarray         # (K - 1,) bool
    runtime_seconds: float
    config: SamplerConfig
    model_id: str
    chain_index: int

    @property
    def length(self) -> int:
        return self.samples.shape[0]


@dataclass
class ChainStats:
    chain_index: int
    warmup: Optional[int]
    acceptance_pct: float
    runtime_seconds: float
    mean: Optional[np.ndarray] = None
    variance: Optional[np.ndarray] = None
    mean_norm: Optional[float] = None
    variance_norm: Optional[float] = None
    insufficient_post: bool = False


def run_chain(
    model: TargetModel,
    config: SamplerConfig,
    theta_init,
    chain_length: int,
    chain_index: int = 0,
) -> ChainRecord:
    """Run one chain of ``chain_length`` samples including the initial point."""
    if chain_length < 2:
        raise InputError(f"chain_length must be at least 2, got {chain_length}")
    state = init_chain_state(model, theta_init, config, chain_index)
    samples = np.empty((chain_length, state.theta.size))
    accepted = np.zeros(chain_length - 1, dtype=bool)
    samples[0] = state.theta
    start = time.perf_counter()
    for step in range(chain_length - 1):
        state, acc, _ = chain_step(model, state, config)
        samples[step + 1] = state.theta
        accepted[step] = acc
    runtime = time.perf_counter() - start
    return ChainRecord(
        samples=samples,
        accepted=accepted,
        runtime_seconds=runtime,
        config=config,
        model_id=model.name,
        chain_index=chain_index,
    )


def draw_initial_point(
    theta_true,
    seed: int,
    chain_index: int,
    half_width: float = 0.5,
    model: Optional[TargetModel] = None,
    max_tries: int = 1000,
) -> np.ndarray:
    """Uniform draw from the box theta_true +- half_width * |theta_true|.

    Shared across methods: the key involves only (seed, chain_index).  When
    a model is given, draws are repeated from the same stream until one
    lands inside the support (the box can leave it, e.g. a perturbed
    covariance losing positive definiteness).
    """
    theta_true = np.asarray(theta_true, dtype=float)
    rng = init_generator(seed, chain_index)
    radius = half_width * np.abs(theta_true)
    for _ in range(max_tries):
        point = theta_true + rng.uniform(-1.0, 1.0, size=theta_true.size) * radius
        if model is None or np.isfinite(model.log_posterior(point)):
            return point
    raise InputError(
        f"no in-support initial point found in {max_tries} draws; "
        "shrink the initialization box"
    )


def detect_warmup(samples, theta_true, rel_tol: float) -> Optional[int]:
    """Smallest 1-based index from which the chain stays inside the tube."""
    if not rel_tol > 0:
        raise InputError(f"rel_tol must be positive, got {rel_tol}")
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    theta_true = np.asarray(theta_true, dtype=float).reshape(-1)
    if samples.shape[1] != theta_true.size:
        raise DimensionError(
            f"samples have dimension {samples.shape[1]}, truth has {theta_true.size}"
        )
    tol = rel_tol * max(1.0, float(np.max(np.abs(theta_true))))
    inside = np.max(np.abs(samples - theta_true), axis=1) <= tol
    if not inside[-1]:
        return None
    outside = np.flatnonzero(~inside)
    if outside.size == 0:
        return 1
    return int(outside[-1]) + 2  # first 1-based index after the last violation


def chain_statistics(record: ChainRecord, warmup: int, n_post: int) -> ChainStats:
    """Componentwise mean and unbiased variance over n_post samples after warmup."""
    if warmup < 1:
        raise InputError(f"warmup index must be >= 1, got {warmup}")
    if n_post < 2:
        raise InputError(f"need at least 2 post-warmup samples, got {n_post}")
    k = record.length
    if warmup + n_post > k:
        raise InputError(
            f"warmup {warmup} + n_post {n_post} exceeds chain length {k}"
        )
    window = record.samples[warmup : warmup + n_post]
    mean = window.mean(axis=0)
    variance = window.var(axis=0, ddof=1)
    return ChainStats(
        chain_index=record.chain_index,
        warmup=warmup,
        acceptance_pct=100.0 * float(np.mean(record.accepted)),
        runtime_seconds=record.runtime_seconds,
        mean=mean,
        variance=variance,
        mean_norm=float(np.linalg.norm(mean)),
        variance_norm=float(np.linalg.norm(variance)),
    )


def summarize_chain(
    record: ChainRecord,
    theta_true,
    rel_tol: float,
    n_post: int,
) -> ChainStats:
    """Warmup detection plus statistics, degrading gracefully.

    Chains that never reach the tube, or reach it too late to leave
    ``n_post`` samples, keep their acceptance and runtime but report no
    mean or variance.
    """
    warmup = detect_warmup(record.samples, theta_true, rel_tol)
    base = ChainStats(
        chain_index=record.chain_index,
        warmup=warmup,
        acceptance_pct=100.0 * float(np.mean(record.accepted)),
        runtime_seconds=record.runtime_seconds,
    )
    if warmup is None:
        return base
    try:
        return chain_statistics(record, warmup, n_post)
    except InputError:
        base.insufficient_post = True
        return base


def _spread(values: Sequence[float]) -> dict:
    ordered = sorted(values)
    return {
        "min": ordered[0],
        "median": ordered[(len(ordered) - 1) // 2],
        "max": ordered[-1],
    }


def _vector_spread(vectors: Sequence[np.ndarray]) -> dict:
    stacked = np.stack(vectors)
    ordered = np.sort(stacked, axis=0)
    low_mid = (stacked.shape[0] - 1) // 2
    return {
        "min": ordered[0].tolist(),
        "median": ordered[low_mid].tolist(),
        "max": ordered[-1].tolist(),
    }


def aggregate_runs(stats: Sequence[ChainStats]) -> dict:
    """Cross-chain min/median/max per metric.

    Warmup and the post-warmup statistics aggregate over the chains where
    they exist; chains without a detected warmup are counted as failures.
    """
    stats = list(stats)
    if not stats:
        raise InputError("no chain statistics to aggregate")
    detected = [s for s in stats if s.warmup is not None]
    complete = [s for s in detected if s.mean is not None]
    out = {
        "chains_total": len(stats),
        "chains_detected": len(detected),
        "chains_failed": len(stats) - len(detected),
        "chains_insufficient_post": sum(1 for s in detected if s.insufficient_post),
        "acceptance_pct": _spread([s.acceptance_pct for s in stats]),
        "runtime_seconds": _spread([s.runtime_seconds for s in stats]),
        "warmup": _spread([s.warmup for s in detected]) if detected else None,
        "mean": _vector_spread([s.mean for s in complete]) if complete else None,
        "variance": _vector_spread([s.variance for s in complete]) if complete else None,
        "mean_norm": _spread([s.mean_norm for s in complete]) if complete else None,
        "variance_norm": _spread([s.variance_norm for s in complete]) if complete else None,
    }
    return out


# ---------------------------------------------------------------------------
# Trace CSV: columns iter, accepted, theta_1..theta_d; iter is 1-based and the
# first row (the initial point) carries accepted=1 by convention.


def write_trace_csv(path, record: ChainRecord) -> None:
    d = record.samples.shape[1]
    header = "iter,accepted," + ",".join(f"theta_{j + 1}" for j in range(d))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for i, row in enumerate(record.samples):
            acc = 1 if i == 0 else int(record.accepted[i - 1])
            values = ",".join(format(v, ".17g") for v in row)
            fh.write(f"{i + 1},{acc},{values}\n")


def read_trace_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a trace written by :func:`write_trace_csv` as (samples, accepted)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("iter,accepted,theta_1"):
        raise InputError(f"{path} is not a trace CSV")
    rows = [ln.split(",") for ln in lines[1:]]
    samples = np.array([[float(v) for v in row[2:]] for row in rows])
    accepted = np.array([int(row[1]) for row in rows[1:]], dtype=bool)
    return samples, accepted
