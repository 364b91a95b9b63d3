"""Small-multiples SVG panels with interval glyphs and time-flattened edges.

One panel per timeslice.  Each panel shows the slice's aggregated graph at
the shared embedding positions, plus a top-left glyph: a horizontal bar
whose length encodes the interval's share of the full time range, and a
polyline of the event frequency inside the interval.  Edge color encodes
the median event time within the interval on a teal-to-brown ramp; edge
width grows with the event count (1 + log2(count) by default).

Output is deterministic: identical inputs yield byte-identical SVG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .events import DynamicGraph
from .layout import Embedding
from .slicing import AggregatedEdge, SliceGraph, Timeslicing, project_slice

__all__ = [
    "GlyphSpec",
    "StyledEdge",
    "PanelSpec",
    "build_panels",
    "render_svg",
    "TEAL",
    "BROWN",
]

TEAL = (0, 128, 128)
BROWN = (139, 69, 19)


@dataclass(frozen=True)
class GlyphSpec:
    """Interval glyph data: time-range bar plus frequency sparkline."""

    duration_fraction: float
    freq_series: tuple[int, ...]


@dataclass(frozen=True)
class StyledEdge:
    """An aggregated edge with its color parameter and stroke width."""

    edge: AggregatedEdge
    u: float  # 0 = interval start, 1 = interval end
    width: float


@dataclass(frozen=True)
class PanelSpec:
    """Render-ready description of one small-multiple panel."""

    index: int  # 1-based slice number
    interval: tuple[float, float]
    slice_graph: SliceGraph
    glyph: GlyphSpec
    styled_edges: tuple[StyledEdge, ...]
    positions: dict[str, tuple[float, float]]


def _edge_width(count: int, law: str) -> float:
    if law == "log":
        return 1.0 + math.log2(count)
    if law == "linear":
        return float(count)
    raise ValueError(f"unknown width law: {law!r}")


def build_panels(
    g: DynamicGraph,
    s: Timeslicing,
    e: Embedding,
    glyph_bin_width: float | None = None,
    all_nodes: bool = False,
    width_law: str = "log",
) -> tuple[PanelSpec, ...]:
    """Build one PanelSpec per slice of ``s``.

    ``glyph_bin_width`` is the sparkline bin width inside each interval;
    by default each interval is split into 20 bins.
    """
    if s.extent != g.extent:
        raise ValueError("timeslicing does not derive from this graph")
    missing = [lab for lab in g.labels if lab not in e.positions]
    if missing:
        raise ValueError(f"embedding lacks positions for nodes: {missing}")

    T = g.extent
    panels = []
    for idx, (lo, hi) in enumerate(s.intervals(), start=1):
        sg = project_slice(g, (lo, hi), all_nodes=all_nodes)
        span = hi - lo
        styled = []
        for edge in sg.edges:
            u = 0.0 if span <= 0 else (edge.median_time - lo) / span
            styled.append(
                StyledEdge(
                    edge=edge,
                    u=min(1.0, max(0.0, u)),
                    width=_edge_width(edge.count, width_law),
                )
            )
        panels.append(
            PanelSpec(
                index=idx,
                interval=(lo, hi),
                slice_graph=sg,
                glyph=GlyphSpec(
                    duration_fraction=span / T if T > 0 else 1.0,
                    freq_series=_freq_series(g, lo, hi, hi >= T, glyph_bin_width),
                ),
                styled_edges=tuple(styled),
                positions=e.positions,
            )
        )
    return tuple(panels)


def _freq_series(g, lo, hi, closed, glyph_bin_width):
    span = hi - lo
    if glyph_bin_width is None:
        n_bins = 20
    else:
        if glyph_bin_width <= 0:
            raise ValueError("glyph_bin_width must be positive")
        n_bins = max(1, int(math.ceil(span / glyph_bin_width - 1e-9)))
    if span <= 0:
        n_bins = 1
    times = g.times
    i0 = int(np.searchsorted(times, lo, side="left"))
    i1 = int(np.searchsorted(times, hi, side="right" if closed else "left"))
    t = times[i0:i1]
    if span <= 0:
        return (len(t),)
    idx = np.clip(((t - lo) / span * n_bins).astype(np.int64), 0, n_bins - 1)
    return tuple(int(c) for c in np.bincount(idx, minlength=n_bins))


def _lerp_color(start, end, u: float) -> str:
    rgb = tuple(round(a + u * (b - a)) for a, b in zip(start, end))
    return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"


def _num(v: float) -> str:
    return f"{v:.2f}"


def render_svg(
    panels,
    grid: tuple[int, int],
    canvas: tuple[float, float] = (1200.0, 900.0),
    color_start: tuple[int, int, int] = TEAL,
    color_end: tuple[int, int, int] = BROWN,
    glyph_y_scale: str = "global",
) -> str:
    """Assemble panels into one SVG 1.1 document.

    ``grid`` is (columns, rows) and must have capacity for all panels.
    The glyph sparkline uses a global y-scale by default so frequencies
    are comparable across panels (set ``glyph_y_scale="panel"`` for
    per-panel scaling).
    """
    cols, rows = grid
    width, height = canvas
    if width <= 0 or height <= 0:
        raise ValueError("canvas must have positive size")
    if cols < 1 or rows < 1 or cols * rows < len(panels):
        raise ValueError(
            f"grid {cols}x{rows} cannot hold {len(panels)} panels"
        )
    if glyph_y_scale not in ("global", "panel"):
        raise ValueError(f"unknown glyph_y_scale: {glyph_y_scale!r}")

    cell_w = width / cols
    cell_h = height / rows
    pad = 6.0
    glyph_w = 0.35 * cell_w
    glyph_h = 0.14 * cell_h
    bar_h = 4.0
    graph_top = pad + glyph_h + bar_h + 8.0
    node_r = 3.0
    global_max = max(
        (max(p.glyph.freq_series) for p in panels), default=0
    )

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">\n',
        f'<rect x="0" y="0" width="{_num(width)}" height="{_num(height)}" fill="white"/>\n',
    ]
    for p in panels:
        row, col = divmod(p.index - 1, cols)
        ox = col * cell_w
        oy = row * cell_h
        parts.append(f'<g id="panel-{p.index}" transform="translate({_num(ox)},{_num(oy)})">\n')
        parts.append(
            f'<rect class="panel-frame" x="1.00" y="1.00" width="{_num(cell_w - 2)}" '
            f'height="{_num(cell_h - 2)}" fill="none" stroke="#cccccc" stroke-width="1"/>\n'
        )
        parts.append(
            f'<text class="panel-index" x="{_num(cell_w - pad)}" y="{_num(pad + 10)}" '
            f'text-anchor="end" font-family="sans-serif" font-size="11">{p.index}</text>\n'
        )
        lo, hi = p.interval
        parts.append(
            f'<text class="interval-label" x="{_num(pad)}" y="{_num(pad + glyph_h + bar_h + 4)}" '
            f'font-family="sans-serif" font-size="7" fill="#666666">'
            f'[{lo:.6g}, {hi:.6g}]</text>\n'
        )

        # glyph: duration bar and frequency polyline
        bar_len = p.glyph.duration_fraction * glyph_w
        parts.append(
            f'<rect class="duration-bar" x="{_num(pad)}" y="{_num(pad + glyph_h + 2)}" '
            f'width="{_num(bar_len)}" height="{_num(bar_h)}" fill="#444444"/>\n'
        )
        series = p.glyph.freq_series
        y_max = global_max if glyph_y_scale == "global" else max(series, default=0)
        y_max = max(y_max, 1)
        if len(series) > 1:
            step = glyph_w / (len(series) - 1)
            points = " ".join(
                f"{_num(pad + i * step)},{_num(pad + glyph_h - glyph_h * c / y_max)}"
                for i, c in enumerate(series)
            )
        else:
            c = series[0] if series else 0
            y = pad + glyph_h - glyph_h * c / y_max
            points = f"{_num(pad)},{_num(y)} {_num(pad + glyph_w)},{_num(y)}"
        parts.append(
            f'<polyline class="freq-line" points="{points}" fill="none" '
            f'stroke="#888888" stroke-width="1"/>\n'
        )

        # graph area
        gx0, gy0 = pad + node_r, graph_top
        gw = cell_w - 2 * pad - 2 * node_r
        gh = cell_h - graph_top - pad - node_r - 8.0
        to_px = lambda xy: (gx0 + xy[0] * gw, gy0 + xy[1] * gh)
        for se in p.styled_edges:
            x1, y1 = to_px(p.positions[se.edge.source])
            x2, y2 = to_px(p.positions[se.edge.target])
            color = _lerp_color(color_start, color_end, se.u)
            parts.append(
                f'<line class="edge" x1="{_num(x1)}" y1="{_num(y1)}" '
                f'x2="{_num(x2)}" y2="{_num(y2)}" stroke="{color}" '
                f'stroke-width="{_num(se.width)}" stroke-linecap="round" opacity="0.85"/>\n'
            )
        for label in p.slice_graph.nodes:
            x, y = to_px(p.positions[label])
            parts.append(
                f'<circle class="node" cx="{_num(x)}" cy="{_num(y)}" r="{_num(node_r)}" '
                f'fill="#222222"/>\n'
            )
            parts.append(
                f'<text class="node-label" x="{_num(x + node_r + 2)}" y="{_num(y + 3)}" '
                f'font-family="sans-serif" font-size="8">{escape(label)}</text>\n'
            )
        parts.append("</g>\n")
    parts.append("</svg>\n")
    return "".join(parts)
