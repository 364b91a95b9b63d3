"""Command-line pipelines: synth -> slice -> metrics -> render.

Every module error maps to a documented nonzero exit status so scripted
pipelines can tell failure modes apart.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click

from . import figures
from .errors import EvsliceError, ResolutionUndefinedError
from .events import DynamicGraph, ingest_stream
from .layout import Embedding, layout_aggregate
from .metrics import (
    Burst,
    bursty_year_preset,
    complexity_report,
    format_report_table,
    method_slicings,
    report_rows,
    reports_to_dict,
    synth_events,
)
from .render import build_panels, render_svg
from .slicing import (
    EQUAL_EVENTS,
    HIST_EQ,
    METHODS,
    UNIFORM,
    build_histogram,
    equal_event_partition,
    histeq_slicing,
    slice_event_counts,
    timeslicing_from_dict,
    timeslicing_to_dict,
    uniform_slicing,
)

AUTO_BIN_CAP = 10_000  # auto bin width is at least T / 10000

EXIT_CODES = """\
Exit codes:
  0  success                        5  resolution undefined
  2  usage error                    6  insufficient events for k slices
  3  malformed input record         7  resolution too coarse for k slices
  4  empty input                    8  degenerate time extent
                                    9  invalid argument combination
"""


@click.group(epilog=EXIT_CODES)
@click.option(
    "--config",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON file of default option values (flags take precedence).",
)
@click.pass_context
def main(ctx, config):
    """Timeslicing of event-based dynamic graphs.

    Computes uniform and complexity-balancing (equal-events, hist-eq)
    timeslicings, reports per-slice visual complexity, and renders
    small-multiples SVG panels.
    """
    if config:
        with open(config) as fh:
            values = {k.replace("-", "_"): v for k, v in json.load(fh).items()}
        ctx.default_map = {
            cmd: values for cmd in ("slice", "metrics", "render", "synth", "layout")
        }


def _fail(exc) -> None:
    click.echo(f"error: {exc}", err=True)
    code = exc.exit_code if isinstance(exc, EvsliceError) else 9
    sys.exit(code)


def _load(path) -> DynamicGraph:
    with open(path) as fh:
        return ingest_stream(fh)


def _resolve_bin_width(g: DynamicGraph, raw: str) -> float:
    if raw != "auto":
        value = float(raw)
        if value <= 0:
            raise ValueError("--bin-width must be positive")
        return value
    if g.native_resolution is None:
        raise ResolutionUndefinedError(
            "resolution undefined: cannot infer --bin-width auto; "
            "pass an explicit --bin-width"
        )
    return max(g.native_resolution, g.extent / AUTO_BIN_CAP)


def _slice_with(g, method, k, bin_width_raw):
    if method == UNIFORM:
        return uniform_slicing(g, k)
    if method == EQUAL_EVENTS:
        return equal_event_partition(g, k)
    return histeq_slicing(g, k, _resolve_bin_width(g, bin_width_raw))


def _load_slicing(path):
    with open(path) as fh:
        return timeslicing_from_dict(json.load(fh))


def _write_text(path, text) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_bytes(text.encode("utf-8"))


_input_arg = click.argument("input", type=click.Path(exists=True, dir_okay=False))
_method_opt = click.option(
    "--method", type=click.Choice(METHODS), default=UNIFORM, show_default=True
)
_slices_opt = click.option(
    "--slices", "-k", type=int, default=12, show_default=True, help="Slice budget k."
)
_bin_width_opt = click.option(
    "--bin-width",
    default="auto",
    show_default=True,
    help="Histogram bin width for hist-eq; 'auto' = native resolution, "
    "capped below at T/10000.",
)
_seed_opt = click.option("--seed", type=int, default=0, show_default=True)


@main.command("slice")
@_input_arg
@_method_opt
@_slices_opt
@_bin_width_opt
@click.option("--out", default="-", show_default=True, help="Output path or - for stdout.")
def cmd_slice(input, method, slices, bin_width, out):
    """Compute a timeslicing and emit it as a JSON document."""
    try:
        g = _load(input)
        s = _slice_with(g, method, slices, bin_width)
        doc = timeslicing_to_dict(s, counts=slice_event_counts(g, s))
        _write_text(out, json.dumps(doc, indent=2) + "\n")
    except (EvsliceError, ValueError) as exc:
        _fail(exc)


@main.command("metrics")
@_input_arg
@_slices_opt
@_bin_width_opt
@click.option(
    "--slicing",
    "slicing_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Report a precomputed timeslicing (JSON from `slice`) instead of "
    "running the three methods.",
)
@click.option("--out", default=None, help="Write the per-slice report as CSV.")
@click.option("--json", "json_out", default=None, help="Write the report as JSON.")
@click.option(
    "--figures",
    "figures_dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory for report figures (complexity.png, boundaries.png).",
)
def cmd_metrics(input, slices, bin_width, slicing_path, out, json_out, figures_dir):
    """Compare the visual complexity of all three methods."""
    try:
        g = _load(input)
        width = _resolve_bin_width(g, bin_width)
        if slicing_path:
            s = _load_slicing(slicing_path)
            slicings = {s.method: s}
        else:
            slicings = method_slicings(g, slices, width)
        reports = {m: complexity_report(g, s) for m, s in slicings.items()}
        sys.stdout.write(format_report_table(reports))
        if out:
            rows = report_rows(slicings, reports)
            _write_text(out, "\n".join(",".join(r) for r in rows) + "\n")
        if json_out:
            doc = reports_to_dict(slicings, reports, width)
            _write_text(json_out, json.dumps(doc, indent=2) + "\n")
        if figures_dir:
            target = Path(figures_dir)
            target.mkdir(parents=True, exist_ok=True)
            figures.save_complexity_figure(reports, target / "complexity.png")
            figures.save_boundary_figure(
                build_histogram(g, width), slicings, target / "boundaries.png"
            )
    except (EvsliceError, ValueError) as exc:
        _fail(exc)


@main.command("render")
@_input_arg
@_method_opt
@_slices_opt
@_bin_width_opt
@_seed_opt
@click.option("--iterations", type=int, default=500, show_default=True)
@click.option(
    "--slicing",
    "slicing_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Render a precomputed timeslicing (JSON from `slice`).",
)
@click.option(
    "--embedding",
    "embedding_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Reuse node positions (JSON from `layout`) instead of computing them.",
)
@click.option("--grid", default=None, help="Panel grid as COLSxROWS; default near-square.")
@click.option("--canvas", default="1200x900", show_default=True, help="Canvas as WIDTHxHEIGHT px.")
@click.option("--all-nodes", is_flag=True, help="Draw the full node set in every panel.")
@click.option(
    "--color-start", default="0,128,128", show_default=True,
    help="RGB anchor for the earliest median time (teal).",
)
@click.option(
    "--color-end", default="139,69,19", show_default=True,
    help="RGB anchor for the latest median time (brown).",
)
@click.option(
    "--width-law", type=click.Choice(["log", "linear"]), default="log",
    show_default=True, help="Edge width from event count: 1+log2(n) or n.",
)
@click.option(
    "--glyph-scale", type=click.Choice(["global", "panel"]), default="global",
    show_default=True, help="Frequency sparkline y-scale.",
)
@click.option("--out", default="panels.svg", show_default=True)
def cmd_render(input, method, slices, bin_width, seed, iterations, slicing_path,
               embedding_path, grid, canvas, all_nodes, color_start, color_end,
               width_law, glyph_scale, out):
    """Render small-multiples SVG panels for one timeslicing."""
    try:
        g = _load(input)
        if slicing_path:
            s = _load_slicing(slicing_path)
        else:
            s = _slice_with(g, method, slices, bin_width)
        if embedding_path:
            with open(embedding_path) as fh:
                embedding = Embedding.from_dict(json.load(fh))
        else:
            embedding = layout_aggregate(g, seed=seed, iterations=iterations)
        panels = build_panels(g, s, embedding, all_nodes=all_nodes, width_law=width_law)
        if grid is None:
            cols = math.ceil(math.sqrt(s.k))
            rows = math.ceil(s.k / cols)
        else:
            cols, rows = _parse_pair(grid, "--grid", int)
        size = _parse_pair(canvas, "--canvas", float)
        svg = render_svg(
            panels,
            (cols, rows),
            size,
            color_start=_parse_rgb(color_start, "--color-start"),
            color_end=_parse_rgb(color_end, "--color-end"),
            glyph_y_scale=glyph_scale,
        )
        _write_text(out, svg)
    except (EvsliceError, ValueError) as exc:
        _fail(exc)


@main.command("synth")
@click.option("--preset", type=click.Choice(["bursty-year"]), default=None)
@click.option("--nodes", type=int, default=8, show_default=True)
@click.option("--extent", type=float, default=100.0, show_default=True)
@click.option("--background-rate", type=float, default=0.5, show_default=True)
@click.option(
    "--burst",
    "bursts",
    multiple=True,
    help="Burst window as START:END:COUNT; repeatable.",
)
@click.option("--resolution", type=float, default=None, help="Quantize timestamps to this grid.")
@_seed_opt
@click.option("--out", default="-", show_default=True)
def cmd_synth(preset, nodes, extent, background_rate, bursts, resolution, seed, out):
    """Generate a synthetic edge-list stream (raw timestamps)."""
    try:
        if preset == "bursty-year":
            spec = bursty_year_preset(seed=seed)
        else:
            spec = dict(
                extent=extent,
                n_nodes=nodes,
                background_rate=background_rate,
                bursts=tuple(_parse_burst(b) for b in bursts),
                seed=seed,
                resolution=resolution,
            )
        _, sources, targets, times = synth_events(**spec)
        lines = [f"{a},{b},{float(t)!r}" for a, b, t in zip(sources, targets, times)]
        _write_text(out, "\n".join(lines) + "\n")
    except (EvsliceError, ValueError) as exc:
        _fail(exc)


@main.command("layout")
@_input_arg
@_seed_opt
@click.option("--iterations", type=int, default=500, show_default=True)
@click.option("--out", default="-", show_default=True)
def cmd_layout(input, seed, iterations, out):
    """Compute the shared aggregated-graph embedding as JSON."""
    try:
        g = _load(input)
        embedding = layout_aggregate(g, seed=seed, iterations=iterations)
        _write_text(out, json.dumps(embedding.to_dict(), indent=2) + "\n")
    except (EvsliceError, ValueError) as exc:
        _fail(exc)


def _parse_pair(text, flag, cast):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"{flag} expects COLSxROWS, got {text!r}")
    try:
        return cast(parts[0]), cast(parts[1])
    except ValueError:
        raise ValueError(f"{flag} expects two numbers, got {text!r}") from None


def _parse_rgb(text, flag):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"{flag} expects R,G,B, got {text!r}")
    try:
        rgb = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"{flag} expects three integers, got {text!r}") from None
    if any(not 0 <= c <= 255 for c in rgb):
        raise ValueError(f"{flag} components must be in 0..255")
    return rgb


def _parse_burst(text) -> Burst:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--burst expects START:END:COUNT, got {text!r}")
    return Burst(float(parts[0]), float(parts[1]), int(parts[2]))


if __name__ == "__main__":
    main()
