"""SVG plot emission."""

from backend.app.services.plotting.svg_plots import (
    plot_example,
    plot_group_boxplot,
    plot_median_vs_p,
)

__all__ = ["plot_example", "plot_group_boxplot", "plot_median_vs_p"]
