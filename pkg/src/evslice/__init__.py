"""Uniform and complexity-balancing timeslicing of event-based dynamic graphs."""

from .errors import (
    CoarseResolutionError,
    DegenerateExtentError,
    EmptyStreamError,
    EvsliceError,
    InsufficientEventsError,
    MalformedRecordError,
    ResolutionUndefinedError,
)
from .events import DynamicGraph, TemporalEdge, ingest_stream, native_resolution, write_stream
from .layout import Embedding, layout_aggregate
from .metrics import (
    Burst,
    ComplexityReport,
    compare_methods,
    complexity_report,
    synth_stream,
)
from .render import PanelSpec, build_panels, render_svg
from .slicing import (
    EQUAL_EVENTS,
    HIST_EQ,
    UNIFORM,
    EqualizedHistogram,
    EventHistogram,
    SliceGraph,
    Timeslicing,
    build_histogram,
    equal_event_partition,
    equalize,
    histeq_slicing,
    project_slice,
    uniform_slicing,
)

__version__ = "0.1.0"

__all__ = [
    "Burst",
    "CoarseResolutionError",
    "ComplexityReport",
    "DegenerateExtentError",
    "DynamicGraph",
    "Embedding",
    "EmptyStreamError",
    "EqualizedHistogram",
    "EventHistogram",
    "EvsliceError",
    "InsufficientEventsError",
    "MalformedRecordError",
    "PanelSpec",
    "ResolutionUndefinedError",
    "SliceGraph",
    "TemporalEdge",
    "Timeslicing",
    "UNIFORM",
    "EQUAL_EVENTS",
    "HIST_EQ",
    "build_histogram",
    "build_panels",
    "compare_methods",
    "complexity_report",
    "equal_event_partition",
    "equalize",
    "histeq_slicing",
    "ingest_stream",
    "layout_aggregate",
    "native_resolution",
    "project_slice",
    "render_svg",
    "synth_stream",
    "uniform_slicing",
    "write_stream",
]
