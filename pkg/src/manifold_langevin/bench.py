"""Experiment configuration, execution, and report emission.

An experiment is described by a JSON document (see ``presets/`` in the
repository) naming the target model with its true parameters, the data
source, the sampler methods to compare, and the chain budget.  Running it
produces one trace CSV per (method, chain), trace figures, and a single
``report.json`` whose aggregate section carries the min/median/max rows of
the benchmark tables.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .datagen import (
    gen_banana,
    gen_logreg,
    gen_mvn,
    gen_rayleigh,
    gen_weibull,
    read_observations,
    write_observations,
)
from .errors import InputError
from .models import (
    BananaModel,
    GaussianModel,
    GaussianParamIndex,
    LogisticModel,
    MODEL_KINDS,
    RayleighModel,
    TargetModel,
    WeibullModel,
)
from .runner import (
    ChainRecord,
    aggregate_runs,
    draw_initial_point,
    run_chain,
    summarize_chain,
    write_trace_csv,
)
from .samplers import PROPOSAL_CORRECTIONS, SamplerConfig, VARIANTS

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class MethodSpec:
    variant: str
    step_size: float
    leapfrog_steps: int = 1
    proposal_correction: str = "hastings"

    def sampler_config(self, seed: int) -> SamplerConfig:
        return SamplerConfig(
            variant=self.variant,
            step_size=self.step_size,
            hmc_leapfrog_steps=self.leapfrog_steps,
            seed=seed,
            proposal_correction=self.proposal_correction,
        )


@dataclass
class ExperimentConfig:
    model_kind: str
    true_parameters: tuple[float, ...]
    methods: tuple[MethodSpec, ...]
    chain_length: int
    chains: int
    n_post: int
    data_n: Optional[int] = None
    data_seed: Optional[int] = None
    data_csv: Optional[str] = None
    model_options: dict = field(default_factory=dict)
    warmup_rel_tol: float = 0.05
    init_half_width: float = 0.5
    seed: int = 0
    out_dir: Optional[str] = None

    def __post_init__(self):
        if self.model_kind not in MODEL_KINDS:
            raise InputError(
                f"model.kind {self.model_kind!r} is not one of {MODEL_KINDS}"
            )
        if not self.methods:
            raise InputError("methods: at least one method is required")
        if self.chain_length < 2:
            raise InputError(f"chain_length must be at least 2, got {self.chain_length}")
        if self.chains < 1:
            raise InputError(f"chains must be at least 1, got {self.chains}")
        if not self.warmup_rel_tol > 0:
            raise InputError(f"warmup_rel_tol must be positive, got {self.warmup_rel_tol}")
        if (self.data_csv is None) == (self.data_n is None):
            raise InputError("data: specify exactly one of generate{n, seed} or csv")


def parse_method(doc: dict, index: int) -> MethodSpec:
    if not isinstance(doc, dict) or "variant" not in doc:
        raise InputError(f"methods[{index}]: expected an object with a 'variant' field")
    variant = doc["variant"]
    if variant not in VARIANTS:
        raise InputError(
            f"methods[{index}].variant: unknown method {variant!r} "
            f"(supported: {', '.join(VARIANTS)}; anything else is out of scope)"
        )
    if "step_size" not in doc:
        raise InputError(f"methods[{index}].step_size is required")
    correction = doc.get("proposal_correction", "hastings")
    if correction not in PROPOSAL_CORRECTIONS:
        raise InputError(
            f"methods[{index}].proposal_correction: {correction!r} is not one of "
            f"{PROPOSAL_CORRECTIONS}"
        )
    return MethodSpec(
        variant=variant,
        step_size=float(doc["step_size"]),
        leapfrog_steps=int(doc.get("leapfrog_steps", 1)),
        proposal_correction=correction,
    )


def parse_config(doc: dict) -> ExperimentConfig:
    """Validate a configuration document, naming the offending field."""
    if not isinstance(doc, dict):
        raise InputError("config must be a JSON object")
    model = doc.get("model")
    if not isinstance(model, dict) or "kind" not in model:
        raise InputError("model: expected an object with a 'kind' field")
    if "true_parameters" not in model:
        raise InputError("model.true_parameters is required")
    options = {
        k: v for k, v in model.items() if k not in ("kind", "true_parameters")
    }
    data = doc.get("data")
    if not isinstance(data, dict):
        raise InputError("data: expected an object with 'generate' or 'csv'")
    data_n = data_seed = data_csv = None
    if "generate" in data:
        gen = data["generate"]
        if not isinstance(gen, dict) or "n" not in gen:
            raise InputError("data.generate: expected an object with 'n'")
        data_n = int(gen["n"])
        data_seed = int(gen.get("seed", 0))
    if "csv" in data:
        data_csv = str(data["csv"])
    methods_doc = doc.get("methods")
    if not isinstance(methods_doc, list) or not methods_doc:
        raise InputError("methods: expected a non-empty list")
    methods = tuple(parse_method(m, i) for i, m in enumerate(methods_doc))
    for key in ("chain_length", "chains", "n_post"):
        if key not in doc:
            raise InputError(f"{key} is required")
    return ExperimentConfig(
        model_kind=model["kind"],
        true_parameters=tuple(float(v) for v in model["true_parameters"]),
        model_options=options,
        data_n=data_n,
        data_seed=data_seed,
        data_csv=data_csv,
        methods=methods,
        chain_length=int(doc["chain_length"]),
        chains=int(doc["chains"]),
        warmup_rel_tol=float(doc.get("warmup_rel_tol", 0.05)),
        n_post=int(doc["n_post"]),
        init_half_width=float(doc.get("init_half_width", 0.5)),
        seed=int(doc.get("seed", 0)),
        out_dir=doc.get("out_dir"),
    )


def emit_config(cfg: ExperimentConfig) -> dict:
    """Inverse of :func:`parse_config`; round-trips field by field."""
    model = {"kind": cfg.model_kind, "true_parameters": list(cfg.true_parameters)}
    model.update(cfg.model_options)
    data: dict = {}
    if cfg.data_csv is not None:
        data["csv"] = cfg.data_csv
    else:
        data["generate"] = {"n": cfg.data_n, "seed": cfg.data_seed}
    doc = {
        "model": model,
        "data": data,
        "methods": [
            {
                "variant": m.variant,
                "step_size": m.step_size,
                "leapfrog_steps": m.leapfrog_steps,
                "proposal_correction": m.proposal_correction,
            }
            for m in cfg.methods
        ],
        "chain_length": cfg.chain_length,
        "chains": cfg.chains,
        "warmup_rel_tol": cfg.warmup_rel_tol,
        "n_post": cfg.n_post,
        "init_half_width": cfg.init_half_width,
        "seed": cfg.seed,
    }
    if cfg.out_dir is not None:
        doc["out_dir"] = cfg.out_dir
    return doc


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(json.load(fh))


# -- dataset and model construction -----------------------------------------


def gaussian_split(theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a flat Gaussian parameter vector into (mean, covariance)."""
    n_params = theta.size
    # n_params = d (d + 3) / 2
    d = int(round((-3 + np.sqrt(9 + 8 * n_params)) / 2))
    if d * (d + 3) // 2 != n_params:
        raise InputError(
            f"gaussian true_parameters length {n_params} does not match any dimension"
        )
    index = GaussianParamIndex(d)
    return np.asarray(theta[:d]), index.build_covariance(np.asarray(theta[d:]))


def generate_observations(cfg: ExperimentConfig) -> np.ndarray:
    theta = np.asarray(cfg.true_parameters, dtype=float)
    n, seed = cfg.data_n, cfg.data_seed
    kind = cfg.model_kind
    if kind == "rayleigh":
        return gen_rayleigh(theta[0], n, seed)[:, None]
    if kind == "banana":
        return gen_banana(theta[0], n, seed)
    if kind == "weibull":
        return gen_weibull(theta[0], theta[1], n, seed)[:, None]
    if kind == "gaussian":
        mu, sigma = gaussian_split(theta)
        return gen_mvn(mu, sigma, n, seed)
    if kind == "logreg":
        d_features = theta.size - 1
        data = gen_logreg(
            theta,
            n,
            d_features,
            feature_low=float(cfg.model_options.get("feature_low", -1.0)),
            feature_high=float(cfg.model_options.get("feature_high", 1.0)),
            seed=seed,
        )
        return np.hstack([data.features, data.responses[:, None]])
    raise InputError(f"unknown model kind {kind!r}")


def resolve_observations(cfg: ExperimentConfig, base_dir: Optional[Path] = None) -> np.ndarray:
    if cfg.data_csv is not None:
        path = Path(cfg.data_csv)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        if not path.exists():
            raise InputError(f"data.csv: no such file {path}")
        return read_observations(path, cfg.model_kind)
    return generate_observations(cfg)


def build_model(cfg: ExperimentConfig, observations: np.ndarray) -> TargetModel:
    kind = cfg.model_kind
    opts = cfg.model_options
    if kind == "rayleigh":
        return RayleighModel(observations[:, 0])
    if kind == "banana":
        return BananaModel(observations)
    if kind == "weibull":
        return WeibullModel(
            observations[:, 0],
            expectation_draws=int(opts.get("expectation_draws", 2000)),
        )
    if kind == "gaussian":
        mu, _ = gaussian_split(np.asarray(cfg.true_parameters))
        if observations.shape[1] != mu.size:
            raise InputError(
                f"gaussian data has {observations.shape[1]} columns, "
                f"true parameters imply {mu.size}"
            )
        return GaussianModel(observations)
    if kind == "logreg":
        return LogisticModel(
            observations[:, :-1],
            observations[:, -1],
            alpha=float(opts.get("alpha", 100.0)),
        )
    raise InputError(f"unknown model kind {kind!r}")


# -- execution ----------------------------------------------------------------


def method_label(methods: tuple[MethodSpec, ...], index: int) -> str:
    variant = methods[index].variant
    if sum(1 for m in methods if m.variant == variant) == 1:
        return variant
    return f"{variant}#{index}"


def run_experiment(
    cfg: ExperimentConfig,
    out_dir=None,
    threads: int = 1,
    render_plots: bool = True,
    base_dir: Optional[Path] = None,
):
    """Run every (method, chain) pair and assemble the report document.

    Returns ``(report, records)`` with ``records`` a dict keyed by method
    label.  When ``out_dir`` is given the trace CSVs, the report JSON, and
    (unless disabled) the trace figures are written beneath it.
    """
    observations = resolve_observations(cfg, base_dir)
    model = build_model(cfg, observations)
    theta_true = np.asarray(cfg.true_parameters, dtype=float)

    inits = [
        draw_initial_point(theta_true, cfg.seed, c, cfg.init_half_width, model)
        for c in range(cfg.chains)
    ]

    jobs = [
        (mi, c)
        for mi in range(len(cfg.methods))
        for c in range(cfg.chains)
    ]

    def _run(job) -> ChainRecord:
        mi, c = job
        sampler_cfg = cfg.methods[mi].sampler_config(cfg.seed)
        return run_chain(model, sampler_cfg, inits[c], cfg.chain_length, chain_index=c)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run, jobs))
    else:
        results = [_run(job) for job in jobs]

    records: dict[str, list[ChainRecord]] = {}
    for job, record in zip(jobs, results):
        records.setdefault(method_label(cfg.methods, job[0]), []).append(record)

    report = {
        "schema_version": SCHEMA_VERSION,
        "model": {
            "kind": cfg.model_kind,
            "true_parameters": list(map(float, cfg.true_parameters)),
            "options": cfg.model_options,
        },
        "data": (
            {"csv": cfg.data_csv}
            if cfg.data_csv is not None
            else {"n": cfg.data_n, "seed": cfg.data_seed}
        ),
        "chain_length": cfg.chain_length,
        "chains": cfg.chains,
        "warmup_rel_tol": cfg.warmup_rel_tol,
        "n_post": cfg.n_post,
        "init_half_width": cfg.init_half_width,
        "seed": cfg.seed,
        "methods": [],
    }
    for mi, method in enumerate(cfg.methods):
        label = method_label(cfg.methods, mi)
        stats = [
            summarize_chain(rec, theta_true, cfg.warmup_rel_tol, cfg.n_post)
            for rec in records[label]
        ]
        report["methods"].append(
            {
                "name": label,
                "config": {
                    "variant": method.variant,
                    "step_size": method.step_size,
                    "leapfrog_steps": method.leapfrog_steps,
                    "proposal_correction": method.proposal_correction,
                },
                "chains": [_chain_stats_doc(s) for s in stats],
                "aggregate": _jsonable(aggregate_runs(stats)),
            }
        )

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for label, recs in records.items():
            method_dir = out / label
            method_dir.mkdir(exist_ok=True)
            for rec in recs:
                write_trace_csv(method_dir / f"chain_{rec.chain_index}.csv", rec)
        with open(out / "report.json", "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        if render_plots:
            from .plots import render_trace_figures

            render_trace_figures(out / "figures", records, theta_true)
    return report, records


def _chain_stats_doc(s) -> dict:
    return {
        "chain_index": s.chain_index,
        "warmup": s.warmup,
        "acceptance_pct": s.acceptance_pct,
        "runtime_seconds": s.runtime_seconds,
        "mean": None if s.mean is None else [float(v) for v in s.mean],
        "variance": None if s.variance is None else [float(v) for v in s.variance],
        "mean_norm": s.mean_norm,
        "variance_norm": s.variance_norm,
        "insufficient_post": s.insufficient_post,
    }


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def report_schema() -> dict:
    """The published report.json schema, shipped as package data."""
    text = resources.files("manifold_langevin").joinpath(
        "schemas/report.schema.json"
    ).read_text(encoding="utf-8")
    return json.loads(text)


def write_dataset(cfg_or_kind, out_path, **kwargs) -> np.ndarray:
    """Generate observations for a model kind and write the CSV.

    Accepts either an :class:`ExperimentConfig` or a model kind plus the
    keyword arguments ``true_parameters``, ``n``, ``seed`` and model extras.
    Returns the written table.
    """
    if isinstance(cfg_or_kind, ExperimentConfig):
        cfg = cfg_or_kind
    else:
        cfg = ExperimentConfig(
            model_kind=cfg_or_kind,
            true_parameters=tuple(float(v) for v in kwargs.pop("true_parameters")),
            methods=(MethodSpec("mala", 0.1),),
            chain_length=2,
            chains=1,
            n_post=2,
            data_n=int(kwargs.pop("n")),
            data_seed=int(kwargs.pop("seed", 0)),
            model_options=kwargs,
        )
    table = generate_observations(cfg)
    write_observations(out_path, cfg.model_kind, table, seed=cfg.data_seed)
    return table
