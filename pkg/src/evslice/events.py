"""Event-based dynamic graphs: ingestion, validation, canonical emission.

A dynamic graph here is a node set plus a sequence of time-stamped edge
events over [0, T].  Timestamps are normalized so the earliest event sits
at t = 0; the original offset of the first event is kept as metadata only.
Node labels are interned to dense integer indices internally, and events
are held in numpy arrays sorted by timestamp (stable, so equal timestamps
keep input order).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, TextIO

import numpy as np

from .errors import EmptyStreamError, MalformedRecordError, ResolutionUndefinedError

__all__ = [
    "TemporalEdge",
    "DynamicGraph",
    "ingest_stream",
    "native_resolution",
    "write_stream",
]

_LABEL_FORBIDDEN = (",", "\n", "\r")


@dataclass(frozen=True)
class TemporalEdge:
    """One time-stamped edge event."""

    source: str
    target: str
    time: float


def _check_label(label: str) -> str:
    if not label:
        raise ValueError("node labels must be non-empty")
    if label.startswith("#") or any(c in label for c in _LABEL_FORBIDDEN):
        raise ValueError(f"node label not representable in wire format: {label!r}")
    return label


@dataclass(frozen=True)
class DynamicGraph:
    """An event-based dynamic graph with normalized, sorted events.

    Attributes:
        labels: node labels in order of first appearance in the input.
        sources, targets: per-event node indices into ``labels``.
        times: per-event timestamps, non-decreasing, starting at 0.
        extent: T, the largest timestamp.
        native_resolution: minimum positive gap between distinct timestamps,
            or None when no such gap exists (single distinct timestamp).
        epoch_offset: original timestamp of the earliest event, display only.
    """

    labels: tuple[str, ...]
    sources: np.ndarray
    targets: np.ndarray
    times: np.ndarray
    extent: float
    native_resolution: float | None
    epoch_offset: float = 0.0

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def event_count(self) -> int:
        return len(self.times)

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.labels

    @property
    def events(self) -> tuple[TemporalEdge, ...]:
        """Materialize the event sequence; meant for small graphs and tests."""
        return tuple(
            TemporalEdge(self.labels[s], self.labels[t], float(x))
            for s, t, x in zip(self.sources, self.targets, self.times)
        )

    @classmethod
    def from_events(cls, events: Iterable[TemporalEdge]) -> "DynamicGraph":
        ev = list(events)
        return cls.from_arrays(
            [e.source for e in ev], [e.target for e in ev], [e.time for e in ev]
        )

    @classmethod
    def from_arrays(
        cls,
        sources: Iterable[str],
        targets: Iterable[str],
        times: Iterable[float],
        labels: Iterable[str] | None = None,
    ) -> "DynamicGraph":
        """Build a graph from parallel label/timestamp sequences.

        Normalizes timestamps to start at 0, sorts stably by time, and
        interns labels in order of first appearance (extra ``labels``
        entries, if given, are interned first).
        """
        t = np.asarray(times, dtype=np.float64)
        if t.size == 0:
            raise EmptyStreamError()
        if not np.all(np.isfinite(t)):
            raise ValueError("timestamps must be finite")

        src_in = np.asarray(sources)
        dst_in = np.asarray(targets)
        if src_in.shape != t.shape or dst_in.shape != t.shape:
            raise ValueError("sources, targets and times must have equal length")
        if (
            labels is not None
            and np.issubdtype(src_in.dtype, np.integer)
            and np.issubdtype(dst_in.dtype, np.integer)
        ):
            # fast path: endpoints given as indices into an explicit label set
            names = tuple(_check_label(lab) for lab in labels)
            if len(set(names)) != len(names):
                raise ValueError("duplicate node labels")
            src = src_in.astype(np.intp)
            dst = dst_in.astype(np.intp)
            for arr in (src, dst):
                if arr.size and (arr.min() < 0 or arr.max() >= len(names)):
                    raise ValueError("node index out of range")
            index = dict.fromkeys(names)
        else:
            index = {}
            if labels is not None:
                for lab in labels:
                    index.setdefault(_check_label(lab), len(index))
            src = np.empty(t.size, dtype=np.intp)
            dst = np.empty(t.size, dtype=np.intp)
            for i, (a, b) in enumerate(zip(src_in.tolist(), dst_in.tolist())):
                if a not in index:
                    index[_check_label(a)] = len(index)
                if b not in index:
                    index[_check_label(b)] = len(index)
                src[i] = index[a]
                dst[i] = index[b]

        order = np.argsort(t, kind="stable")
        t = t[order]
        src = src[order]
        dst = dst[order]

        offset = float(t[0])
        t = t - t[0]
        extent = float(t[-1])

        gaps = np.diff(t)
        positive = gaps[gaps > 0]
        resolution = float(positive.min()) if positive.size else None

        t.setflags(write=False)
        src.setflags(write=False)
        dst.setflags(write=False)
        return cls(
            labels=tuple(index),
            sources=src,
            targets=dst,
            times=t,
            extent=extent,
            native_resolution=resolution,
            epoch_offset=offset,
        )


def _parse_timestamp(text: str) -> float:
    """Parse a decimal-seconds or RFC 3339 timestamp into seconds."""
    try:
        return float(text)
    except ValueError:
        pass
    iso = text.strip()
    if iso.endswith(("Z", "z")):
        iso = iso[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(iso)
    except ValueError:
        raise ValueError(f"not a number or RFC 3339 datetime: {text!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def ingest_stream(source: TextIO | Iterable[str]) -> DynamicGraph:
    """Read an edge-list stream into a DynamicGraph.

    Wire format: one record per line, ``source,target,timestamp``.  Lines
    starting with ``#`` and blank lines are skipped.  The timestamp is a
    decimal number of seconds or an RFC 3339 datetime (converted to epoch
    seconds).  Negative timestamps are accepted; normalization shifts the
    earliest event to t = 0.

    Raises:
        MalformedRecordError: unparseable record, with its line number.
        EmptyStreamError: no records at all.
    """
    sources: list[str] = []
    targets: list[str] = []
    times: list[float] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise MalformedRecordError(
                lineno, f"expected 'source,target,timestamp', got {line!r}"
            )
        a, b, ts = (p.strip() for p in parts)
        if not a or not b:
            raise MalformedRecordError(lineno, "empty node label")
        try:
            t = _parse_timestamp(ts)
        except ValueError as exc:
            raise MalformedRecordError(lineno, str(exc)) from None
        sources.append(a)
        targets.append(b)
        times.append(t)
    if not times:
        raise EmptyStreamError()
    return DynamicGraph.from_arrays(sources, targets, times)


def native_resolution(g: DynamicGraph) -> float:
    """Minimum positive time gap between two events of ``g``.

    Raises ResolutionUndefinedError when every event shares one timestamp
    (including the single-event case); callers must then supply a
    resolution explicitly.
    """
    if g.native_resolution is None:
        raise ResolutionUndefinedError()
    return g.native_resolution


def write_stream(g: DynamicGraph, out: TextIO) -> None:
    """Emit the canonical edge list: normalized timestamps, full precision.

    Re-ingesting the emitted text reproduces the graph exactly (events,
    extent, resolution).
    """
    labels = g.labels
    for s, t, x in zip(g.sources, g.targets, g.times):
        out.write(f"{labels[s]},{labels[t]},{float(x)!r}\n")
