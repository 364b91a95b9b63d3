from __future__ import annotations

import numpy as np
import pytest

from evslice.events import DynamicGraph
from evslice.metrics import (
    Burst,
    bursty_year_preset,
    compare_methods,
    complexity_report,
    format_report_table,
    method_slicings,
    report_rows,
    reports_to_dict,
    synth_events,
    synth_stream,
)
from evslice.slicing import EQUAL_EVENTS, HIST_EQ, UNIFORM, uniform_slicing

from conftest import random_graph


def regular_graph(n: int) -> DynamicGraph:
    return DynamicGraph.from_arrays(
        np.zeros(n, dtype=np.intp),
        np.ones(n, dtype=np.intp),
        np.arange(n, dtype=float),
        labels=("a", "b"),
    )


def test_report_on_perfectly_regular_stream():
    g = regular_graph(12)
    rep = complexity_report(g, uniform_slicing(g, 4))
    assert rep.per_slice_counts == (3, 3, 3, 3)
    assert rep.variance == 0.0
    assert rep.mean == 3.0
    assert rep.max_min_ratio == 1.0


def test_report_variance_arithmetic(two_burst):
    rep = complexity_report(two_burst, uniform_slicing(two_burst, 2))
    assert rep.per_slice_counts == (12, 4)
    assert rep.variance == 16.0
    assert rep.interval_durations == (3.875, 3.875)


def test_report_flags_empty_slice_with_inf_ratio():
    g = DynamicGraph.from_arrays(["a", "a"], ["b", "b"], [0.0, 10.0])
    rep = complexity_report(g, uniform_slicing(g, 4))
    assert rep.max_min_ratio == float("inf")
    assert sum(rep.per_slice_counts) == 2


def test_report_extent_mismatch_rejected(two_burst):
    other = regular_graph(5)
    s = uniform_slicing(other, 2)
    with pytest.raises(ValueError):
        complexity_report(two_burst, s)


def test_compare_methods_regular_stream_all_zero_variance():
    g = regular_graph(12)
    reports = compare_methods(g, 4, 1.0)
    assert set(reports) == {UNIFORM, EQUAL_EVENTS, HIST_EQ}
    for rep in reports.values():
        assert rep.variance == 0.0


def test_compare_methods_on_quota_fixture(seventeen_events):
    reports = compare_methods(seventeen_events, 3, 1.0)
    assert reports[EQUAL_EVENTS].per_slice_counts == (6, 5, 6)


def test_compare_methods_bursty_improvement(two_burst):
    reports = compare_methods(two_burst, 2, 1.0)
    assert reports[HIST_EQ].variance == 0.0
    assert reports[UNIFORM].variance == 16.0
    assert reports[HIST_EQ].variance < reports[UNIFORM].variance


def test_equal_events_never_worse_than_uniform():
    rng = np.random.default_rng(99)
    for _ in range(50):
        g = random_graph(rng, int(rng.integers(4, 400)))
        k = int(rng.integers(1, min(16, g.event_count) + 1))
        uni = complexity_report(g, uniform_slicing(g, k))
        slicings = method_slicings(g, k, g.native_resolution)
        ee = complexity_report(g, slicings[EQUAL_EVENTS])
        assert ee.variance <= uni.variance + 1e-9


def test_reports_are_pure(two_burst):
    s = uniform_slicing(two_burst, 2)
    assert complexity_report(two_burst, s) == complexity_report(two_burst, s)


# ------------------------------------------------------------------ synth


def test_synth_single_burst_exact_count_and_window():
    labels, sources, targets, times = synth_events(
        extent=20.0, n_nodes=5, background_rate=0.0,
        bursts=(Burst(5.0, 6.0, 10),), seed=42,
    )
    assert len(times) == 10
    assert all(5.0 <= t < 6.0 for t in times)
    assert set(sources) | set(targets) <= set(labels)
    assert all(a != b for a, b in zip(sources, targets))


def test_synth_is_deterministic():
    spec = dict(extent=50.0, n_nodes=6, background_rate=0.8,
                bursts=(Burst(10.0, 12.0, 25),), seed=7)
    a = synth_stream(**spec)
    b = synth_stream(**spec)
    assert a.events == b.events
    assert synth_stream(**{**spec, "seed": 8}).events != a.events


def test_synth_zero_events_rejected():
    with pytest.raises(ValueError):
        synth_events(extent=10.0, background_rate=0.0, bursts=(), seed=1)


def test_synth_argument_validation():
    with pytest.raises(ValueError):
        synth_events(extent=-1.0, background_rate=1.0, seed=1)
    with pytest.raises(ValueError):
        synth_events(extent=10.0, background_rate=-0.5, seed=1)
    with pytest.raises(ValueError):
        synth_events(extent=10.0, background_rate=1.0, n_nodes=1, seed=1)
    with pytest.raises(ValueError):
        Burst(5.0, 5.0, 3)


def test_synth_resolution_quantizes_to_grid():
    g = synth_stream(extent=100.0, background_rate=2.0, seed=3, resolution=0.5)
    scaled = np.asarray(g.times) / 0.5
    assert np.allclose(scaled, np.round(scaled))


def test_bursty_year_preset_shape():
    g = synth_stream(**bursty_year_preset(seed=42))
    day = 86400.0
    assert g.node_count == 12
    assert len(g.labels) == 12
    assert g.event_count > 3000
    assert 416.0 < g.extent / day < 418.0
    assert g.native_resolution >= 1.0


def test_bursty_year_day_histogram_covers_418_bins():
    from evslice.slicing import build_histogram

    g = synth_stream(**bursty_year_preset(seed=42))
    h = build_histogram(g, 86400.0)
    assert h.n_bins == 418
    assert h.total == g.event_count
    assert int(h.counts.sum()) == g.event_count


def test_ingesting_raw_emission_matches_synth_stream():
    import io

    from evslice.events import ingest_stream

    spec = dict(extent=80.0, n_nodes=5, background_rate=0.4,
                bursts=(Burst(20.0, 22.0, 15),), seed=11)
    _, sources, targets, times = synth_events(**spec)
    text = "\n".join(f"{a},{b},{t!r}" for a, b, t in zip(sources, targets, times))
    ingested = ingest_stream(io.StringIO(text))
    direct = synth_stream(**spec)
    assert ingested.events == direct.events
    assert ingested.extent == direct.extent
    assert ingested.native_resolution == direct.native_resolution


# -------------------------------------------------------------- emission


def test_format_report_table_aligned(two_burst):
    reports = compare_methods(two_burst, 2, 1.0)
    table = format_report_table(reports)
    lines = table.splitlines()
    assert lines[0].startswith("method")
    assert len(lines) == 2 + len(reports)
    assert "uniform" in table and "hist-eq" in table


def test_report_rows_long_format(two_burst):
    slicings = method_slicings(two_burst, 2, 1.0)
    reports = {m: complexity_report(two_burst, s) for m, s in slicings.items()}
    rows = report_rows(slicings, reports)
    assert rows[0] == ("method", "slice", "t_lo", "t_hi", "duration", "events")
    assert len(rows) == 1 + 3 * 2


def test_reports_to_dict_round_trips_through_json(two_burst):
    import json

    slicings = method_slicings(two_burst, 2, 1.0)
    reports = {m: complexity_report(two_burst, s) for m, s in slicings.items()}
    doc = json.loads(json.dumps(reports_to_dict(slicings, reports, 1.0)))
    assert doc["bin_width"] == 1.0
    assert doc["methods"][HIST_EQ]["counts"] == [8, 8]
    assert doc["methods"][UNIFORM]["variance"] == 16.0
    assert doc["methods"][UNIFORM]["boundaries"][-1] == 7.75
