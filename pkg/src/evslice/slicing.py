"""Timeslicings of dynamic graphs: uniform, equal-event, histogram-equalized.

All three methods partition [0, T] into k intervals, half-open except the
last ([t_{k-1}, T] is closed).  The two nonuniform methods balance visual
complexity, i.e. the number of events per slice:

* equal-event partitioning walks the sorted event sequence with a target
  quota of |E|/k events per slice and diffuses the fractional rounding
  error into the next slice, so no slice ever drifts more than one event
  from the quota;
* histogram-equalized slicing builds an event histogram at a chosen
  temporal resolution, equalizes it through the cumulative distribution,
  and samples the equalized axis uniformly, devoting more slices to bursts
  and fewer to quiet stretches.
"""

from __future__ import annotations

import math
import warnings
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoarseResolutionError,
    DegenerateExtentError,
    EmptyStreamError,
    InsufficientEventsError,
)
from .events import DynamicGraph

__all__ = [
    "UNIFORM",
    "EQUAL_EVENTS",
    "HIST_EQ",
    "METHODS",
    "EVENT_SEQUENCE",
    "Timeslicing",
    "EventHistogram",
    "EqualizedHistogram",
    "SliceGraph",
    "AggregatedEdge",
    "uniform_slicing",
    "equal_event_partition",
    "diffused_counts",
    "build_histogram",
    "equalize",
    "histeq_slicing",
    "project_slice",
    "slice_event_counts",
    "timeslicing_to_dict",
    "timeslicing_from_dict",
]

UNIFORM = "uniform"
EQUAL_EVENTS = "equal-events"
HIST_EQ = "hist-eq"
METHODS = (UNIFORM, EQUAL_EVENTS, HIST_EQ)

# resolution_used marker for methods that walk the raw event sequence
EVENT_SEQUENCE = "event-sequence"


@dataclass(frozen=True)
class Timeslicing:
    """An ordered partition of [0, T] into k intervals.

    ``boundaries`` has k + 1 entries, ``boundaries[0] == 0`` and
    ``boundaries[k] == T``.  Interval l is [t_{l-1}, t_l), except the last
    which is closed at T.  ``resolution_used`` is the histogram bin width
    for hist-eq, the "event-sequence" marker for equal-events, and None
    for uniform.
    """

    boundaries: tuple[float, ...]
    method: str
    k: int
    resolution_used: float | str | None

    def __post_init__(self):
        if len(self.boundaries) != self.k + 1:
            raise ValueError("boundary count must be k + 1")

    @property
    def extent(self) -> float:
        return self.boundaries[-1]

    def intervals(self) -> list[tuple[float, float]]:
        b = self.boundaries
        return [(b[i], b[i + 1]) for i in range(self.k)]

    def durations(self) -> tuple[float, ...]:
        b = self.boundaries
        return tuple(b[i + 1] - b[i] for i in range(self.k))


@dataclass(frozen=True)
class EventHistogram:
    """Per-bin event counts over [0, T] at a fixed bin width.

    Bin i covers [i*w, (i+1)*w); the final bin also includes t = T.
    ``cumulative`` holds integer cumulative counts so downstream CDF
    comparisons stay exact; ``pdf``/``cdf`` are their float counterparts.
    """

    bin_width: float
    counts: np.ndarray
    total: int
    pdf: np.ndarray
    cdf: np.ndarray
    cumulative: np.ndarray

    @classmethod
    def from_counts(cls, counts, bin_width: float) -> "EventHistogram":
        if bin_width <= 0:
            raise ValueError("bin_width must be positive")
        c = np.asarray(counts, dtype=np.int64)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("counts must be a non-empty 1-D sequence")
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        total = int(c.sum())
        cumulative = np.cumsum(c)
        if total > 0:
            pdf = c / total
            cdf = cumulative / total
        else:
            pdf = np.zeros_like(c, dtype=np.float64)
            cdf = np.zeros_like(c, dtype=np.float64)
        for arr in (c, cumulative, pdf, cdf):
            arr.setflags(write=False)
        return cls(
            bin_width=float(bin_width),
            counts=c,
            total=total,
            pdf=pdf,
            cdf=cdf,
            cumulative=cumulative,
        )

    @property
    def n_bins(self) -> int:
        return len(self.counts)

    @property
    def top_index(self) -> int:
        """B, the index of the last bin."""
        return len(self.counts) - 1

    @property
    def occupied(self) -> int:
        return int(np.count_nonzero(self.counts))


@dataclass(frozen=True)
class EqualizedHistogram:
    """Result of histogram equalization: bin i maps to level s[i] in [0, B]."""

    source: EventHistogram
    s: np.ndarray


@dataclass(frozen=True)
class AggregatedEdge:
    """All events of one unordered node pair within a slice, as one edge."""

    source: str
    target: str
    count: int
    times: tuple[float, ...]
    median_time: float


@dataclass(frozen=True)
class SliceGraph:
    """Static projection of one interval of a dynamic graph."""

    interval: tuple[float, float]
    nodes: tuple[str, ...]
    edges: tuple[AggregatedEdge, ...]
    event_count: int


def uniform_slicing(g: DynamicGraph, k: int) -> Timeslicing:
    """Partition [0, T] into k intervals of equal duration T/k."""
    _check_k(k)
    T = g.extent
    if T == 0.0:
        if k > 1:
            raise DegenerateExtentError()
        return Timeslicing((0.0, 0.0), UNIFORM, 1, None)
    boundaries = [l * T / k for l in range(k)]
    boundaries.append(T)
    if any(boundaries[i] >= boundaries[i + 1] for i in range(k)):
        raise DegenerateExtentError(f"extent {T} too small for {k} distinct slices")
    return Timeslicing(tuple(boundaries), UNIFORM, k, None)


def diffused_counts(total: int, k: int) -> list[int]:
    """Assign ``total`` events to k slices by error diffusion.

    Each slice targets the quota total/k plus the error carried from the
    previous slice, takes the nearest integer count (ties go to the larger
    count), and passes the residual on.  The counts sum to ``total``
    exactly and each lies within 1 of the quota.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if total < k:
        raise InsufficientEventsError(total, k)
    quota = total / k
    counts = []
    carried = 0.0
    remaining = total
    for l in range(k):
        slices_left = k - l
        if slices_left == 1:
            c = remaining
        else:
            target = quota + carried
            c = math.floor(target + 0.5)  # ties round up
            c = max(1, min(c, remaining - (slices_left - 1)))
            carried = target - c
        counts.append(c)
        remaining -= c
    return counts


def equal_event_partition(g: DynamicGraph, k: int) -> Timeslicing:
    """Slice so each interval holds (nearly) |E|/k events.

    Walks events in timestamp order (ties in input order), assigning
    counts by error diffusion; the boundary after slice l is placed midway
    between the last event of slice l and the first event of slice l + 1.
    When those two events coincide in time, the cut falls half a native
    resolution after them, nudged forward as needed to keep boundaries
    strictly increasing.
    """
    _check_k(k)
    n = g.event_count
    if n < k:
        raise InsufficientEventsError(n, k)
    T = g.extent
    if k == 1:
        return Timeslicing((0.0, T), EQUAL_EVENTS, 1, EVENT_SEQUENCE)
    if T == 0.0:
        raise DegenerateExtentError()

    counts = diffused_counts(n, k)
    times = g.times
    resolution = g.native_resolution
    boundaries = [0.0]
    cum = 0
    for c in counts[:-1]:
        cum += c
        a = float(times[cum - 1])
        b = float(times[cum])
        if a < b:
            m = 0.5 * (a + b)
            if m <= a:  # adjacent floats: fall back to the right event
                m = b
        else:
            # coincident bounding events: no cut separates them in time
            m = a + 0.5 * resolution
        if not boundaries[-1] < m < T:
            # cut landed in a run of equal timestamps (possibly at T, or
            # already used); move halfway toward the next distinct
            # timestamp (or T)
            j = int(np.searchsorted(times, a, side="right"))
            upper = float(times[j]) if j < n else T
            lower = max(boundaries[-1], a)
            m = 0.5 * (lower + upper)
            if m <= boundaries[-1]:
                raise DegenerateExtentError(
                    f"cannot realize {k} distinct boundaries on this stream"
                )
        boundaries.append(m)
    boundaries.append(T)
    return Timeslicing(tuple(boundaries), EQUAL_EVENTS, k, EVENT_SEQUENCE)


def build_histogram(g: DynamicGraph, bin_width: float) -> EventHistogram:
    """Count events into bins of ``bin_width`` covering [0, T].

    The number of bins is floor(T / bin_width) + 1, so the final bin
    contains t = T.  The bin width must not be finer than the stream's
    native resolution.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    resolution = g.native_resolution
    if resolution is None:
        warnings.warn(
            "native resolution undefined; accepting bin_width unchecked",
            stacklevel=2,
        )
    elif bin_width < resolution:
        raise ValueError(
            f"bin_width {bin_width} finer than native resolution {resolution}"
        )
    n_bins = int(math.floor(g.extent / bin_width)) + 1
    idx = np.minimum((g.times // bin_width).astype(np.int64), n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    return EventHistogram.from_counts(counts, bin_width)


def equalize(h: EventHistogram) -> EqualizedHistogram:
    """Histogram equalization: map bin i to level s_i = floor(B * P(i)).

    B is the index of the last bin, so levels span [0, B] and s_B == B
    exactly.  Computed in integer arithmetic: s_i = (B * cum_i) // total.
    """
    if h.total == 0:
        raise EmptyStreamError("no events: cannot equalize an empty histogram")
    B = h.top_index
    s = (B * h.cumulative) // h.total
    s.setflags(write=False)
    return EqualizedHistogram(source=h, s=s)


def _quantile_bins(h: EventHistogram, k: int) -> list[int]:
    """Bin index of each interior cut: first bin where P(b) >= l/k, exactly."""
    scaled = h.cumulative * k  # integer compare: cum/total >= l/k
    return [int(np.searchsorted(scaled, l * h.total, side="left")) for l in range(1, k)]


def histeq_slicing(g: DynamicGraph, k: int, bin_width: float) -> Timeslicing:
    """Slice by uniform sampling of the equalized event histogram.

    Interior boundary l sits at the end of the earliest bin whose CDF
    reaches l/k.  Candidate cuts that repeat a previous boundary advance
    to the next occupied bin end; cuts that would spill past T retreat to
    the nearest free occupied bin end below.  Requires at least k occupied
    bins.
    """
    _check_k(k)
    h = build_histogram(g, bin_width)
    T = g.extent
    if k == 1:
        return Timeslicing((0.0, T), HIST_EQ, 1, h.bin_width)
    occupied = h.occupied
    if occupied < k:
        raise CoarseResolutionError(k, occupied)

    w = h.bin_width
    # admissible cut bins: occupied, with end (b+1)*w inside (0, T]
    admissible = [
        b for b in np.flatnonzero(h.counts).tolist() if (b + 1) * w <= T
    ]
    if len(admissible) < k - 1:
        raise CoarseResolutionError(k, len(admissible) + 1)

    candidates = _quantile_bins(h, k)
    chosen: list[int] = []
    prev = -1
    for l, cand in enumerate(candidates, start=1):
        p = bisect_left(admissible, cand)
        p = max(p, prev + 1)
        p = min(p, len(admissible) - (k - l))
        chosen.append(admissible[p])
        prev = p

    boundaries = [0.0]
    boundaries.extend((b + 1) * w for b in chosen)
    boundaries.append(T)
    return Timeslicing(tuple(boundaries), HIST_EQ, k, w)


def project_slice(
    g: DynamicGraph,
    interval: tuple[float, float],
    closed_end: bool | None = None,
    all_nodes: bool = False,
) -> SliceGraph:
    """Project the events of one interval down to a static graph.

    The interval is half-open [lo, hi); when hi equals the graph extent
    (or ``closed_end`` is set) it is closed, so the final slice of a
    timeslicing captures events at exactly t = T.  Events of one unordered
    node pair aggregate into a single edge carrying the event count, the
    event timestamps, and their median.  Only incident nodes appear unless
    ``all_nodes`` is set.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if hi < lo:
        raise ValueError(f"inverted interval: [{lo}, {hi})")
    if closed_end is None:
        closed_end = hi >= g.extent
    times = g.times
    i0 = int(np.searchsorted(times, lo, side="left"))
    i1 = int(np.searchsorted(times, hi, side="right" if closed_end else "left"))

    src = g.sources[i0:i1]
    dst = g.targets[i0:i1]
    t = times[i0:i1]
    lo_idx = np.minimum(src, dst)
    hi_idx = np.maximum(src, dst)
    key = lo_idx * g.node_count + hi_idx
    order = np.argsort(key, kind="stable")  # event times stay sorted per pair

    edges = []
    pos = 0
    key_sorted = key[order]
    while pos < len(key_sorted):
        end = pos + int(np.searchsorted(key_sorted[pos:], key_sorted[pos], side="right"))
        sel = order[pos:end]
        a = int(lo_idx[sel[0]])
        b = int(hi_idx[sel[0]])
        pair_times = t[sel]
        edges.append(
            AggregatedEdge(
                source=g.labels[a],
                target=g.labels[b],
                count=len(sel),
                times=tuple(float(x) for x in pair_times),
                median_time=float(np.median(pair_times)),
            )
        )
        pos = end

    if all_nodes:
        nodes = g.labels
    else:
        incident = np.unique(np.concatenate([src, dst])) if len(src) else []
        nodes = tuple(g.labels[int(i)] for i in incident)
    return SliceGraph(
        interval=(lo, hi),
        nodes=nodes,
        edges=tuple(edges),
        event_count=i1 - i0,
    )


def slice_event_counts(g: DynamicGraph, s: Timeslicing) -> tuple[int, ...]:
    """Events per slice, by the same projection rule as project_slice."""
    _check_same_graph(g, s)
    interior = np.asarray(s.boundaries[1:-1], dtype=np.float64)
    idx = np.searchsorted(g.times, interior, side="left")
    edges = np.concatenate(([0], idx, [g.event_count]))
    return tuple(int(x) for x in np.diff(edges))


def timeslicing_to_dict(s: Timeslicing, counts=None) -> dict:
    """Serializable form: method, k, resolution, full-precision boundaries."""
    doc = {
        "method": s.method,
        "k": s.k,
        "resolution": s.resolution_used,
        "boundaries": [float(b) for b in s.boundaries],
    }
    if counts is not None:
        doc["counts"] = [int(c) for c in counts]
    return doc


def timeslicing_from_dict(doc: dict) -> Timeslicing:
    """Rebuild a Timeslicing from its serialized form (see timeslicing_to_dict)."""
    boundaries = tuple(float(b) for b in doc["boundaries"])
    if not boundaries or boundaries[0] != 0.0:
        raise ValueError("boundaries must start at 0")
    interior_ok = all(a < b for a, b in zip(boundaries[:-2], boundaries[1:-1]))
    if not interior_ok or (len(boundaries) > 1 and boundaries[-2] > boundaries[-1]):
        raise ValueError("boundaries must be increasing")
    return Timeslicing(
        boundaries=boundaries,
        method=str(doc.get("method", "unknown")),
        k=len(boundaries) - 1,
        resolution_used=doc.get("resolution"),
    )


def _check_k(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def _check_same_graph(g: DynamicGraph, s: Timeslicing) -> None:
    if s.extent != g.extent:
        raise ValueError(
            f"timeslicing extent {s.extent} does not match graph extent {g.extent}"
        )
