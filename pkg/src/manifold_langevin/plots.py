"""Trace-figure rendering for benchmark reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def render_trace_figures(
    out_dir,
    records_by_method: dict,
    theta_true,
    max_components: int = 6,
    chain_index: int = 0,
) -> list[Path]:
    """One PNG per parameter component comparing methods on one chain.

    Each figure overlays the chosen chain's trace for every method with a
    horizontal line at the true value, the same way the warmup-phase
    comparisons are usually displayed.
    """
    theta_true = np.asarray(theta_true, dtype=float).reshape(-1)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    n_components = min(theta_true.size, max_components)
    for j in range(n_components):
        fig, ax = plt.subplots(figsize=(7.0, 3.2))
        for label, records in records_by_method.items():
            rec = next((r for r in records if r.chain_index == chain_index), records[0])
            ax.plot(
                np.arange(1, rec.samples.shape[0] + 1),
                rec.samples[:, j],
                linewidth=0.9,
                label=label,
            )
        ax.axhline(theta_true[j], color="black", linestyle="--", linewidth=0.8)
        ax.set_xlabel("iteration")
        ax.set_ylabel(f"theta_{j + 1}")
        ax.legend(loc="best", fontsize="small")
        fig.tight_layout()
        path = out / f"trace_theta_{j + 1}.png"
        fig.savefig(path, dpi=130)
        plt.close(fig)
        paths.append(path)
    return paths
