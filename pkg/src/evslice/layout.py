"""One shared node embedding for all panels.

Every panel of a small-multiples document uses the same positions, so
graphs stay comparable across slices.  The embedding is a deterministic
Fruchterman-Reingold layout of the aggregated union graph, where each
node pair is weighted by its total event count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .events import DynamicGraph

__all__ = ["Embedding", "layout_aggregate", "aggregate_weights"]

MARGIN = 0.05  # unit-square padding after normalization


@dataclass(frozen=True)
class Embedding:
    """Node positions in the unit square, keyed by label."""

    positions: dict[str, tuple[float, float]]
    seed: int

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "positions": {k: [x, y] for k, (x, y) in self.positions.items()},
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Embedding":
        return cls(
            positions={k: (float(x), float(y)) for k, (x, y) in doc["positions"].items()},
            seed=int(doc.get("seed", 0)),
        )


def aggregate_weights(g: DynamicGraph):
    """Unordered node-pair index arrays and their total event counts."""
    lo = np.minimum(g.sources, g.targets)
    hi = np.maximum(g.sources, g.targets)
    key = lo * g.node_count + hi
    uniq, counts = np.unique(key, return_counts=True)
    return uniq // g.node_count, uniq % g.node_count, counts


def layout_aggregate(g: DynamicGraph, seed: int = 0, iterations: int = 500) -> Embedding:
    """Deterministic force-directed layout of the aggregated graph.

    Positions depend only on the pair weights, the seed and the iteration
    count; event order does not matter.  Output coordinates are normalized
    into the unit square with a 5% margin.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n = g.node_count
    if n == 1:
        return Embedding({g.labels[0]: (0.5, 0.5)}, seed)

    ei, ej, w = aggregate_weights(g)
    loops = ei != ej  # self-loops exert no spring force
    ei, ej, w = ei[loops], ej[loops], w[loops]
    w_att = 1.0 + np.log2(w.astype(np.float64))

    rng = np.random.default_rng(seed)
    pos = rng.uniform(0.0, 1.0, (n, 2))
    k_opt = math.sqrt(1.0 / n)
    t0 = 0.1
    for it in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.hypot(delta[..., 0], delta[..., 1])
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        # repulsion between all pairs: k^2 / d
        rep = (k_opt * k_opt) / (dist * dist)
        np.fill_diagonal(rep, 0.0)
        disp = np.einsum("ijk,ij->ik", delta, rep)
        # attraction along weighted edges: w * d^2 / k
        if len(ei):
            dvec = pos[ei] - pos[ej]
            d = np.maximum(np.hypot(dvec[:, 0], dvec[:, 1]), 1e-9)
            pull = (w_att * d / k_opt)[:, None] * dvec
            np.subtract.at(disp, ei, pull)
            np.add.at(disp, ej, pull)
        length = np.maximum(np.hypot(disp[:, 0], disp[:, 1]), 1e-12)
        temp = t0 * (1.0 - it / iterations)
        pos += disp / length[:, None] * np.minimum(length, temp)[:, None]

    span = 1.0 - 2.0 * MARGIN
    out = np.empty_like(pos)
    for axis in range(2):
        lo, hi = pos[:, axis].min(), pos[:, axis].max()
        if hi - lo < 1e-12:
            out[:, axis] = 0.5
        else:
            out[:, axis] = MARGIN + span * (pos[:, axis] - lo) / (hi - lo)
    positions = {
        label: (float(out[i, 0]), float(out[i, 1])) for i, label in enumerate(g.labels)
    }
    return Embedding(positions, seed)
