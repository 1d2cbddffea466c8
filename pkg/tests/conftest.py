"""Session fixtures: preset loading and cached benchmark runs."""

from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from manifold_langevin.bench import load_config, run_experiment

PRESET_DIR = Path(__file__).resolve().parent.parent / "presets"


def preset_config(name: str, variants=None, **overrides):
    cfg = load_config(PRESET_DIR / name)
    if variants is not None:
        methods = tuple(m for m in cfg.methods if m.variant in variants)
        cfg = replace(cfg, methods=methods)
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg


@pytest.fixture(scope="session")
def rayleigh_run():
    """Scale-model benchmark, geometric sampler vs plain Langevin, 10 chains."""
    cfg = preset_config("rayleigh_table1.json", variants=("gala", "mala"))
    return cfg, run_experiment(cfg, out_dir=None, render_plots=False)


@pytest.fixture(scope="session")
def banana_run():
    cfg = preset_config("banana_table1.json", variants=("gala", "mala"))
    return cfg, run_experiment(cfg, out_dir=None, render_plots=False)


@pytest.fixture(scope="session")
def weibull_run():
    cfg = preset_config("weibull_table2.json", variants=("gala", "mala"))
    return cfg, run_experiment(cfg, out_dir=None, render_plots=False)


@pytest.fixture(scope="session")
def gaussian5_run():
    cfg = preset_config("gaussian_5param.json", variants=("gala",))
    return cfg, run_experiment(cfg, out_dir=None, render_plots=False)


@pytest.fixture(scope="session")
def gaussian20_run():
    cfg = preset_config("gaussian_20param.json")
    return cfg, run_experiment(cfg, out_dir=None, render_plots=False)


@pytest.fixture(scope="session")
def logreg_run():
    cfg = preset_config("logreg_bench.json")
    return cfg, run_experiment(cfg, out_dir=None, render_plots=False)
