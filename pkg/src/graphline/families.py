"""Deterministic generators for the graph families used in experiments.

Families:
    path       P_n: n+1 vertices 0..n in a line.
    cycle      C_n: n vertices (n >= 3).
    comb       body path of length n with ceil(n/r) teeth of length r,
               attached at evenly spaced body indices floor(j*n/ceil(n/r)).
    grid       w x h square grid.
    grid_line  n x n grid plus a path of n^2 edges attached at corner (0,0);
               2*n^2 vertices in total.
    torus      w x h grid with wraparound (w, h >= 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Graph

FAMILY_KINDS = ("path", "cycle", "comb", "grid", "grid_line", "torus")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int | None = None
    r: int | None = None
    width: int | None = None
    height: int | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind in ("path", "cycle", "comb", "grid_line"):
            if self.n is None or self.n < 1:
                raise ValueError(f"{self.kind} requires n >= 1")
        if self.kind == "cycle" and self.n < 3:
            # n in {1, 2} would force a self-loop or a doubled edge
            raise ValueError("cycle requires n >= 3 to stay a simple graph")
        if self.kind == "comb":
            if self.r is None or not 1 <= self.r <= self.n:
                raise ValueError("comb requires 1 <= r <= n")
        if self.kind in ("grid", "torus"):
            if self.width is None or self.height is None:
                raise ValueError(f"{self.kind} requires width and height")
            if self.width < 1 or self.height < 1:
                raise ValueError(f"{self.kind} dimensions must be >= 1")
        if self.kind == "torus" and (self.width < 3 or self.height < 3):
            raise ValueError("torus requires width, height >= 3 to stay simple")

    def params(self) -> dict:
        out = {"kind": self.kind}
        for name in ("n", "r", "width", "height"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


def _path_edges(n: int, offset: int = 0):
    return [(offset + i, offset + i + 1) for i in range(n)]


def _grid_edges(w: int, h: int):
    # vertex (x, y) -> id y*w + x; (0, 0) is vertex 0
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return edges


def generate(spec: FamilySpec) -> Graph:
    """Construct the graph described by ``spec``."""
    kind = spec.kind
    if kind == "path":
        return Graph.from_edges(spec.n + 1, _path_edges(spec.n))

    if kind == "cycle":
        n = spec.n
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    if kind == "comb":
        n, r = spec.n, spec.r
        teeth = math.ceil(n / r)
        edges = _path_edges(n)
        next_id = n + 1
        for j in range(teeth):
            attach = (j * n) // teeth
            prev = attach
            for _ in range(r):
                edges.append((prev, next_id))
                prev = next_id
                next_id += 1
        return Graph.from_edges(next_id, edges)

    if kind == "grid":
        return Graph.from_edges(spec.width * spec.height, _grid_edges(spec.width, spec.height))

    if kind == "grid_line":
        n = spec.n
        edges = _grid_edges(n, n)
        prev = 0  # corner (0, 0)
        next_id = n * n
        for _ in range(n * n):
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
        return Graph.from_edges(2 * n * n, edges)

    if kind == "torus":
        w, h = spec.width, spec.height
        edges = set()
        for y in range(h):
            for x in range(w):
                v = y * w + x
                for u in (y * w + (x + 1) % w, ((y + 1) % h) * w + x):
                    edges.add((min(v, u), max(v, u)))
        return Graph.from_edges(w * h, sorted(edges))

    raise ValueError(f"unknown family {kind!r}")


def comb_vertex_count(n: int, r: int) -> int:
    """(n+1) body vertices plus ceil(n/r) teeth of r vertices each."""
    return (n + 1) + math.ceil(n / r) * r
