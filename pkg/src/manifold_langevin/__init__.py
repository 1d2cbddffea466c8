"""Fisher-metric Langevin and Hamiltonian MCMC samplers with a benchmark CLI.

The geometry module supplies the SPD and connection primitives, the models
package the estimation targets, the samplers module the one-step kernels,
and the runner/bench modules multi-chain execution and reporting.
"""

from .errors import DimensionError, DomainError, InputError, NumericError
from .geometry import (
    MetricBundle,
    build_bundle,
    christoffel,
    connection_drift,
    fpe_residual_1d,
    log_gaussian_density,
    spd_repair,
    sqrt_inverse,
)
from .models import (
    BananaModel,
    GaussianModel,
    GaussianParamIndex,
    LogisticModel,
    RayleighModel,
    TargetModel,
    WeibullModel,
    make_model,
    monte_carlo_metric_oracle,
    weibull_expectations,
)
from .runner import (
    ChainRecord,
    ChainStats,
    aggregate_runs,
    chain_statistics,
    detect_warmup,
    draw_initial_point,
    run_chain,
    summarize_chain,
)
from .samplers import (
    ChainState,
    ProposalResult,
    SamplerConfig,
    VARIANTS,
    chain_step,
    hmc_propose,
    init_chain_state,
    langevin_propose,
    mh_accept,
)

__version__ = "0.1.0"

__all__ = [
    "BananaModel",
    "ChainRecord",
    "ChainState",
    "ChainStats",
    "DimensionError",
    "DomainError",
    "GaussianModel",
    "GaussianParamIndex",
    "InputError",
    "LogisticModel",
    "MetricBundle",
    "NumericError",
    "ProposalResult",
    "RayleighModel",
    "SamplerConfig",
    "TargetModel",
    "VARIANTS",
    "WeibullModel",
    "aggregate_runs",
    "build_bundle",
    "chain_statistics",
    "chain_step",
    "christoffel",
    "connection_drift",
    "detect_warmup",
    "draw_initial_point",
    "fpe_residual_1d",
    "hmc_propose",
    "init_chain_state",
    "langevin_propose",
    "log_gaussian_density",
    "make_model",
    "mh_accept",
    "monte_carlo_metric_oracle",
    "run_chain",
    "spd_repair",
    "sqrt_inverse",
    "summarize_chain",
    "weibull_expectations",
    "__version__",
]
