"""Deterministic random-stream derivation.

Every stream is keyed by (master seed, chain index, iteration, role) through
numpy's SeedSequence spawn keys.  A chain is therefore a pure function of its
seed and index, independent of scheduling or worker count, and samplers run
with the same seed consume identical noise in paired comparisons.
"""

from __future__ import annotations

import numpy as np

_INIT = 0
_STEP = 1
_METRIC = 2


def data_generator(seed: int) -> np.random.Generator:
    """Generator for dataset synthesis from a bare integer seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def init_generator(seed: int, chain_index: int) -> np.random.Generator:
    """Generator for the shared per-chain initial-point draw.

    The key does not involve the sampler variant, so all methods started
    from the same (seed, chain) pair share one initial point.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(_INIT, chain_index))
    return np.random.Generator(np.random.PCG64(ss))


def step_generator(seed: int, chain_index: int, iteration: int) -> np.random.Generator:
    """Generator owning all randomness of one chain step.

    Each step draws, in order: one standard-normal vector (proposal noise or
    HMC momentum) and one uniform (the accept draw).  Keying by iteration
    rather than by consumption keeps streams aligned across variants.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(_STEP, chain_index, iteration))
    return np.random.Generator(np.random.PCG64(ss))


def metric_seed(seed: int, chain_index: int, iteration: int) -> int:
    """Integer seed for per-step stochastic metric evaluations."""
    ss = np.random.SeedSequence(seed, spawn_key=(_METRIC, chain_index, iteration))
    return int(ss.generate_state(1, np.uint64)[0])
