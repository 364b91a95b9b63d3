"""Visual-complexity metrics and synthetic benchmark streams.

Visual complexity of a timeslicing is measured as the number of events
projected into each slice; a good nonuniform slicing keeps the variance
of those counts small.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .events import DynamicGraph
from .slicing import (
    EQUAL_EVENTS,
    HIST_EQ,
    UNIFORM,
    Timeslicing,
    equal_event_partition,
    histeq_slicing,
    slice_event_counts,
    timeslicing_to_dict,
    uniform_slicing,
)

__all__ = [
    "ComplexityReport",
    "Burst",
    "complexity_report",
    "method_slicings",
    "compare_methods",
    "synth_events",
    "synth_stream",
    "bursty_year_preset",
    "format_report_table",
    "report_rows",
    "reports_to_dict",
]


@dataclass(frozen=True)
class ComplexityReport:
    """Per-slice event counts of one timeslicing plus summary statistics."""

    per_slice_counts: tuple[int, ...]
    mean: float
    variance: float
    max_min_ratio: float
    interval_durations: tuple[float, ...]


def complexity_report(g: DynamicGraph, s: Timeslicing) -> ComplexityReport:
    """Measure the visual complexity of ``s`` on the graph it was computed on.

    Counts are projection cardinalities per slice; variance is the
    population variance over the k slices.  ``max_min_ratio`` is inf when
    some slice is empty (uniform slicings legitimately produce those).
    """
    counts = slice_event_counts(g, s)
    arr = np.asarray(counts, dtype=np.float64)
    mean = float(arr.mean())
    variance = float(arr.var())
    low = arr.min()
    ratio = float(arr.max() / low) if low > 0 else float("inf")
    return ComplexityReport(
        per_slice_counts=counts,
        mean=mean,
        variance=variance,
        max_min_ratio=ratio,
        interval_durations=s.durations(),
    )


def method_slicings(g: DynamicGraph, k: int, bin_width: float) -> dict[str, Timeslicing]:
    """Run all three slicing methods with shared parameters."""
    return {
        UNIFORM: uniform_slicing(g, k),
        EQUAL_EVENTS: equal_event_partition(g, k),
        HIST_EQ: histeq_slicing(g, k, bin_width),
    }


def compare_methods(g: DynamicGraph, k: int, bin_width: float) -> dict[str, ComplexityReport]:
    """Aligned complexity reports for uniform, equal-events and hist-eq."""
    return {
        method: complexity_report(g, s)
        for method, s in method_slicings(g, k, bin_width).items()
    }


@dataclass(frozen=True)
class Burst:
    """A rectangular burst window [start, end) holding ``count`` events."""

    start: float
    end: float
    count: int

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError("burst window must have positive duration")
        if self.count < 0:
            raise ValueError("burst count must be non-negative")


def synth_events(
    extent: float,
    n_nodes: int = 8,
    background_rate: float = 0.0,
    bursts: tuple[Burst, ...] = (),
    seed: int = 0,
    resolution: float | None = None,
    labels: tuple[str, ...] | None = None,
):
    """Generate a raw (unnormalized) synthetic event stream.

    Args:
        extent: length of the time axis; background events are uniform on
            [0, extent).
        n_nodes: size of the node set; pairs are drawn uniformly among
            distinct nodes.
        background_rate: homogeneous event rate; round(rate * extent)
            background events are placed.
        bursts: burst windows, each contributing exactly ``count`` events
            uniform on [start, end).
        seed: RNG seed; equal seeds give identical streams.
        resolution: optional grid to quantize timestamps onto (floor).
        labels: node labels; defaults to n01, n02, ...

    Returns:
        (labels, sources, targets, times) with raw timestamps in
        generation order.
    """
    labels, src, dst, times = _synth_indexed(
        extent, n_nodes, background_rate, bursts, seed, resolution, labels
    )
    sources = [labels[i] for i in src]
    targets = [labels[i] for i in dst]
    return labels, sources, targets, times.tolist()


def _synth_indexed(extent, n_nodes, background_rate, bursts, seed, resolution, labels):
    """Core generator; endpoints as index arrays into the label set."""
    if extent <= 0:
        raise ValueError("extent must be positive")
    if background_rate < 0:
        raise ValueError("background_rate must be non-negative")
    if n_nodes < 2:
        raise ValueError("need at least two nodes to form pairs")
    if labels is None:
        labels = tuple(f"n{i + 1:02d}" for i in range(n_nodes))
    elif len(labels) != n_nodes:
        raise ValueError("labels length must equal n_nodes")
    rng = np.random.default_rng(seed)
    blocks = [rng.uniform(0.0, extent, int(round(background_rate * extent)))]
    for burst in bursts:
        blocks.append(rng.uniform(burst.start, burst.end, burst.count))
    times = np.concatenate(blocks)
    if times.size == 0:
        raise ValueError("synthesis spec implies zero events")
    if resolution is not None:
        if resolution <= 0:
            raise ValueError("resolution must be positive")
        times = np.floor(times / resolution) * resolution

    src = rng.integers(0, n_nodes, times.size)
    dst = rng.integers(0, n_nodes - 1, times.size)
    dst = np.where(dst >= src, dst + 1, dst)
    return labels, src, dst, times


def synth_stream(
    extent: float,
    n_nodes: int = 8,
    background_rate: float = 0.0,
    bursts: tuple[Burst, ...] = (),
    seed: int = 0,
    resolution: float | None = None,
    labels: tuple[str, ...] | None = None,
) -> DynamicGraph:
    """Deterministic synthetic DynamicGraph (see synth_events for knobs)."""
    labels, src, dst, times = _synth_indexed(
        extent, n_nodes, background_rate, bursts, seed, resolution, labels
    )
    return DynamicGraph.from_arrays(src, dst, times, labels=labels)


def bursty_year_preset(seed: int = 42):
    """Knobs for a year-long, 12-node benchmark stream at 1 s precision.

    Shape: 418 days, a dozen teams-like node set, several multi-day
    bursts over a sparse background; >3000 events in total.
    """
    day = 86400.0
    bursts = (
        Burst(10 * day, 12 * day, 250),
        Burst(40 * day, 41 * day, 200),
        Burst(80 * day, 82 * day, 300),
        Burst(150 * day, 151 * day, 250),
        Burst(210 * day, 212 * day, 200),
        Burst(300 * day, 301 * day, 150),
        Burst(360 * day, 361 * day, 250),
        Burst(400 * day, 402 * day, 350),
    )
    return dict(
        extent=418 * day,
        n_nodes=12,
        background_rate=1500 / (418 * day),
        bursts=bursts,
        seed=seed,
        resolution=1.0,
        labels=tuple(f"t{i + 1:02d}" for i in range(12)),
    )


def _fmt_ratio(r: float) -> str:
    return "inf" if r == float("inf") else f"{r:.3f}"


def format_report_table(reports: dict[str, ComplexityReport]) -> str:
    """Aligned plain-text table, one row per method."""
    headers = ("method", "k", "mean", "variance", "max/min", "events per slice")
    rows = [
        (
            method,
            str(len(rep.per_slice_counts)),
            f"{rep.mean:.3f}",
            f"{rep.variance:.3f}",
            _fmt_ratio(rep.max_min_ratio),
            ",".join(str(c) for c in rep.per_slice_counts),
        )
        for method, rep in reports.items()
    ]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def report_rows(slicings: dict[str, Timeslicing], reports: dict[str, ComplexityReport]):
    """Long-format rows for delimited output: one row per method and slice."""
    rows = [("method", "slice", "t_lo", "t_hi", "duration", "events")]
    for method, rep in reports.items():
        bounds = slicings[method].boundaries
        for i, count in enumerate(rep.per_slice_counts):
            rows.append(
                (
                    method,
                    str(i + 1),
                    repr(float(bounds[i])),
                    repr(float(bounds[i + 1])),
                    repr(float(bounds[i + 1] - bounds[i])),
                    str(count),
                )
            )
    return rows


def reports_to_dict(
    slicings: dict[str, Timeslicing],
    reports: dict[str, ComplexityReport],
    bin_width: float,
) -> dict:
    """Structured document shared with the timeslicing serialization."""
    methods = {}
    for method, rep in reports.items():
        doc = timeslicing_to_dict(slicings[method], counts=rep.per_slice_counts)
        doc["mean"] = rep.mean
        doc["variance"] = rep.variance
        doc["max_min_ratio"] = (
            "inf" if rep.max_min_ratio == float("inf") else rep.max_min_ratio
        )
        doc["durations"] = [float(d) for d in rep.interval_durations]
        methods[method] = doc
    return {"bin_width": bin_width, "methods": methods}
