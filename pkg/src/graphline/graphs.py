"""Finite connected graphs with exact shortest-path metrics.

Vertices are dense integer ids 0..n-1.  Graphs are immutable after
construction, so they can be shared freely between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
import json

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra


class GraphError(ValueError):
    """Raised for structurally invalid graphs or graph files."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple connected graph as sorted adjacency lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n <= 0:
            raise GraphError("graph must have at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        for u, nbrs in enumerate(self.adj):
            prev = -1
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise GraphError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise GraphError(f"self-loop at vertex {u}")
                if v <= prev:
                    raise GraphError(f"neighbors of {u} not sorted/duplicate-free")
                prev = v
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u not in self.adj[v]:
                    raise GraphError(f"edge {u}-{v} not symmetric")
        # connectivity: BFS from vertex 0 must reach everything
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    queue.append(v)
        if count != self.n:
            raise GraphError("graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs.

        Rejects self-loops and repeated edges rather than silently
        deduplicating them.
        """
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]


@dataclass(frozen=True)
class RootedGraph:
    """A graph with a distinguished root vertex."""

    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise GraphError(f"root {self.root} out of range")


def bfs_distances(g: Graph, v: int, cutoff: int | None = None) -> list[int]:
    """Hop distances from v to every vertex (-1 beyond ``cutoff``)."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    dist = [-1] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = du + 1
                queue.append(w)
    return dist


def _csr(g: Graph) -> csr_matrix:
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for u in range(g.n):
        indptr[u + 1] = indptr[u] + len(g.adj[u])
    indices = np.fromiter(
        (v for u in range(g.n) for v in g.adj[u]), dtype=np.int64, count=indptr[-1]
    )
    data = np.ones(len(indices), dtype=np.int8)
    return csr_matrix((data, indices, indptr), shape=(g.n, g.n))


def all_pairs_distances(g: Graph, dtype=np.int32) -> np.ndarray:
    """Full n x n hop-distance matrix (scipy BFS kernel, chunked)."""
    mat = _csr(g)
    out = np.empty((g.n, g.n), dtype=dtype)
    chunk = max(1, min(g.n, 512))
    for start in range(0, g.n, chunk):
        idx = np.arange(start, min(start + chunk, g.n))
        block = dijkstra(mat, unweighted=True, indices=idx)
        if not np.all(np.isfinite(block)):
            raise GraphError("graph is not connected")
        out[start : start + len(idx)] = block.astype(dtype)
    return out


@dataclass(frozen=True)
class DiameterResult:
    value: int
    endpoints: tuple[int, int]
    exact: bool  # False: double-sweep lower bound only


def eccentricity(g: Graph, v: int) -> int:
    return max(bfs_distances(g, v))


def diameter(g: Graph, mode: str = "exact", dmat: np.ndarray | None = None) -> DiameterResult:
    """Graph diameter with a realizing vertex pair.

    ``exact`` runs all-pairs BFS; ``double_sweep`` returns a lower bound
    (flagged via ``exact=False``).  Witness pair is the lexicographically
    smallest (u, v), u < v, attaining the reported value.
    """
    if mode == "exact":
        D = all_pairs_distances(g) if dmat is None else dmat
        d = int(D.max())
        where = np.argwhere(D == d)
        where = where[where[:, 0] < where[:, 1]]
        if len(where) == 0:  # single-vertex graph
            return DiameterResult(0, (0, 0), True)
        # lexicographically smallest (u, v)
        order = np.lexsort((where[:, 1], where[:, 0]))
        u, v = map(int, where[order[0]])
        return DiameterResult(d, (u, v), True)
    if mode == "double_sweep":
        d0 = bfs_distances(g, 0)
        a = d0.index(max(d0))
        da = bfs_distances(g, a)
        m = max(da)
        b = da.index(m)
        u, v = (a, b) if a < b else (b, a)
        return DiameterResult(m, (u, v), False)
    raise ValueError(f"unknown diameter mode {mode!r}")


def ball(g: Graph, v: int, r: int, dist: list[int] | None = None) -> RootedGraph:
    """Induced subgraph on {u : d(v,u) <= r}, rooted at v.

    Vertices are relabeled canonically by (distance from v, original id),
    so the root always becomes vertex 0 and outputs are deterministic.
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    if dist is None:
        dist = bfs_distances(g, v, cutoff=r)
    members = sorted(
        (u for u in range(g.n) if 0 <= dist[u] <= r),
        key=lambda u: (dist[u], u),
    )
    relabel = {u: i for i, u in enumerate(members)}
    edges = [
        (relabel[u], relabel[w])
        for u in members
        for w in g.adj[u]
        if w in relabel and relabel[u] < relabel[w]
    ]
    return RootedGraph(Graph.from_edges(len(members), edges), 0)


# ---------------------------------------------------------------------------
# graph file I/O
#
# Text format: first line "p <vertex_count> <edge_count>", then one
# "e <u> <v>" line per edge, 0-indexed.  JSON format:
# {"n": int, "edges": [[u, v], ...]} with an optional "family" block
# recording generator parameters.
# ---------------------------------------------------------------------------


def write_graph_text(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p {g.n} {g.edge_count}\n")
        for u, v in g.edges():
            fh.write(f"e {u} {v}\n")


def write_graph_json(g: Graph, path: str, family: dict | None = None) -> None:
    doc: dict = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if family is not None:
        doc["family"] = family
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def read_graph(path: str) -> tuple[Graph, dict | None]:
    """Read either graph file format; returns (graph, family metadata)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        try:
            g = Graph.from_edges(int(doc["n"]), doc["edges"])
        except KeyError as exc:
            raise GraphError(f"missing key in graph JSON: {exc}") from exc
        return g, doc.get("family")
    n = edge_count = None
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n, edge_count = int(parts[1]), int(parts[2])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise GraphError(f"unrecognized line in graph file: {line!r}")
    if n is None:
        raise GraphError("graph file has no 'p' header line")
    if edge_count is not None and edge_count != len(edges):
        raise GraphError(f"header announces {edge_count} edges, found {len(edges)}")
    return Graph.from_edges(n, edges), None
