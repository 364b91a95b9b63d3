from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from evslice.events import DynamicGraph, ingest_stream

DATA_DIR = Path(__file__).parent / "data"

# filled by the acceptance suite; echoed after the run so the per-criterion
# lines survive output capture
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def seventeen_events() -> DynamicGraph:
    """17 events with distinct timestamps; quota 17/3 splits as (6, 5, 6)."""
    with open(DATA_DIR / "seventeen_events.csv") as fh:
        return ingest_stream(fh)


@pytest.fixture
def two_burst() -> DynamicGraph:
    """16 events whose day-width histogram is [4, 4, 4, 0, 0, 0, 0, 4]."""
    with open(DATA_DIR / "two_burst.csv") as fh:
        return ingest_stream(fh)


def random_graph(rng: np.random.Generator, n_events: int, distinct=True) -> DynamicGraph:
    """A two-node stream with random timestamps, for partition properties."""
    if distinct:
        times = np.cumsum(rng.uniform(0.01, 1.0, n_events))
    else:
        times = np.sort(rng.integers(0, max(2, n_events // 2), n_events)).astype(float)
    src = np.zeros(n_events, dtype=np.intp)
    dst = np.ones(n_events, dtype=np.intp)
    return DynamicGraph.from_arrays(src, dst, times, labels=("a", "b"))
