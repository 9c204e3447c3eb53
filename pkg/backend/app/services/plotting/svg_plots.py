"""SVG figures for benchmark results and single identification examples."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from backend.app.models.estimator import Estimator  # noqa: E402
from backend.app.services.metrics import BoxplotSummary  # noqa: E402

logger = logging.getLogger(__name__)

# fixed ids and no timestamp keep the SVG bytes reproducible
matplotlib.rcParams["svg.hashsalt"] = "kernel-bsi"
SVG_METADATA = {"Date": None}

ESTIMATOR_COLORS = {
    Estimator.B_KB: "tab:blue",
    Estimator.NB_LS: "tab:orange",
    Estimator.NB_KB: "tab:green",
}


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=SVG_METADATA, bbox_inches="tight")
    plt.close(fig)
    logger.debug(f"Wrote {path}")
    return path


def plot_group_boxplot(
    p: int,
    summaries: Mapping[Estimator, BoxplotSummary],
    path: Path,
) -> Path:
    """Boxplots of FIT for each estimator in one group, drawn from precomputed statistics."""
    stats = [
        {
            "label": estimator.value,
            "med": s.median,
            "q1": s.q1,
            "q3": s.q3,
            "whislo": s.whisker_low,
            "whishi": s.whisker_high,
            "fliers": s.outliers,
        }
        for estimator, s in summaries.items()
    ]
    fig, ax = plt.subplots(figsize=(6, 4))
    if stats:
        ax.bxp(stats, showfliers=True)
    ax.set_title(f"FIT, p = {p}")
    ax.set_ylabel("FIT")
    ax.grid(axis="y", alpha=0.3)
    return _save(fig, path)


def plot_median_vs_p(medians: Mapping[int, Mapping[Estimator, float]], path: Path) -> Path:
    """Median FIT of every estimator against the input dimension p."""
    ps = sorted(medians)
    fig, ax = plt.subplots(figsize=(6, 4))
    for estimator in Estimator:
        values = [medians[p].get(estimator, np.nan) for p in ps]
        ax.plot(
            ps,
            values,
            marker="o",
            label=estimator.value,
            color=ESTIMATOR_COLORS[estimator],
        )
    ax.set_xlabel("p")
    ax.set_ylabel("median FIT")
    ax.set_xticks(ps)
    ax.grid(alpha=0.3)
    ax.legend()
    return _save(fig, path)


def plot_example(series: Dict[str, np.ndarray], path: Path) -> Path:
    """
    Three panels: normalized input, normalized impulse response, noiseless output.

    Args:
        series: u_true, u_hat, g_true, g_hat (all normalized), z_true and z_hat
        path: Destination SVG

    Returns:
        The written path
    """
    fig, axes = plt.subplots(3, 1, figsize=(7, 8))
    panels: List[tuple] = [
        ("Input (normalized)", "u_true", "u_hat", "t"),
        ("Impulse response (normalized)", "g_true", "g_hat", "k"),
        ("Noiseless output", "z_true", "z_hat", "t"),
    ]
    for ax, (title, true_key, est_key, xlabel) in zip(axes, panels):
        ax.plot(series[true_key], color="black", label="true")
        ax.plot(series[est_key], color="tab:blue", linestyle="--", label="estimated")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.grid(alpha=0.3)
        ax.legend(loc="upper right")
    fig.tight_layout()
    return _save(fig, path)
