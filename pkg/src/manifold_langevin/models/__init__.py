"""Parameter-estimation targets behind one uniform model interface."""

from __future__ import annotations

import numpy as np

from ..errors import InputError
from .banana import BananaModel
from .base import (
    GaussianPrior,
    TargetModel,
    UniformBoxPrior,
    monte_carlo_metric_oracle,
)
from .gaussian import GaussianModel, GaussianParamIndex
from .logreg import LogisticModel
from .rayleigh import RayleighModel
from .weibull import WeibullModel, weibull_expectations

MODEL_KINDS = ("rayleigh", "banana", "weibull", "gaussian", "logreg")


def make_model(kind: str, observations, **options) -> TargetModel:
    """Build a model from an observation table in its CSV column layout."""
    if kind == "rayleigh":
        return RayleighModel(np.asarray(observations).reshape(-1), **options)
    if kind == "banana":
        return BananaModel(observations, **options)
    if kind == "weibull":
        return WeibullModel(np.asarray(observations).reshape(-1), **options)
    if kind == "gaussian":
        return GaussianModel(observations, **options)
    if kind == "logreg":
        table = np.asarray(observations, dtype=float)
        return LogisticModel(table[:, :-1], table[:, -1], **options)
    raise InputError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")


__all__ = [
    "BananaModel",
    "GaussianModel",
    "GaussianParamIndex",
    "GaussianPrior",
    "LogisticModel",
    "MODEL_KINDS",
    "RayleighModel",
    "TargetModel",
    "UniformBoxPrior",
    "WeibullModel",
    "make_model",
    "monte_carlo_metric_oracle",
    "weibull_expectations",
]
