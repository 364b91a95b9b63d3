"""Matplotlib figures for the metrics report path.

Written to files next to the delimited report: a per-slice complexity
chart comparing the methods, and the event histogram overlaid with each
method's slice boundaries.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import ComplexityReport
from .slicing import EventHistogram, Timeslicing

__all__ = ["save_complexity_figure", "save_boundary_figure"]

_METHOD_COLORS = {
    "uniform": "#888888",
    "equal-events": "#1f77b4",
    "hist-eq": "#d62728",
}


def save_complexity_figure(reports: dict[str, ComplexityReport], path) -> None:
    """Grouped bars of events per slice, one group color per method."""
    fig, ax = plt.subplots(figsize=(8, 4))
    methods = list(reports)
    k = max(len(r.per_slice_counts) for r in reports.values())
    group_w = 0.8 / len(methods)
    for m, method in enumerate(methods):
        counts = reports[method].per_slice_counts
        xs = [i + m * group_w for i in range(len(counts))]
        ax.bar(
            xs,
            counts,
            width=group_w,
            label=f"{method} (var {reports[method].variance:.1f})",
            color=_METHOD_COLORS.get(method),
        )
    ax.set_xticks([i + 0.4 - group_w / 2 for i in range(k)])
    ax.set_xticklabels([str(i + 1) for i in range(k)])
    ax.set_xlabel("slice")
    ax.set_ylabel("events")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_boundary_figure(
    hist: EventHistogram, slicings: dict[str, Timeslicing], path
) -> None:
    """Event histogram with each method's slice boundaries as vlines."""
    fig, axes = plt.subplots(
        len(slicings), 1, figsize=(8, 2.2 * len(slicings)), sharex=True, squeeze=False
    )
    w = hist.bin_width
    edges = [i * w for i in range(hist.n_bins)]
    for ax, (method, s) in zip(axes[:, 0], slicings.items()):
        ax.bar(edges, hist.counts, width=w, align="edge", color="#bbbbbb")
        for b in s.boundaries[1:-1]:
            ax.axvline(b, color=_METHOD_COLORS.get(method, "black"), lw=1.2)
        ax.set_ylabel("events/bin")
        ax.set_title(method, fontsize=9, loc="left")
    axes[-1, 0].set_xlabel("time")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
