"""Maximal geodesics, nearest-point cells, and line-likeness statistics.

A maximal geodesic is a shortest path realizing the diameter; its vertex
count is diameter + 1.  Projecting every vertex to its nearest geodesic
vertex (ties to the smallest index) partitions the graph into cells
indexed along the geodesic.  Cell sizes and diameters control how far the
graph metric is from the index metric, which is what the explicit
segment correspondence quantifies.

All tie-breaking is deterministic so fixtures are bit-stable: diameter
endpoint pairs lexicographically, path steps by smallest neighbor id,
cell ties by smallest geodesic index.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, all_pairs_distances, bfs_distances, diameter


@dataclass(frozen=True)
class OrientedGeodesic:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def index_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}


def max_geodesic(g: Graph, dmat: np.ndarray | None = None) -> OrientedGeodesic:
    """A shortest path between a diameter-realizing pair.

    The realizing pair is the lexicographically smallest (u, v) with
    u < v; the path is walked from u to v choosing the smallest-id
    neighbor that decreases the BFS distance to v.
    """
    res = diameter(g, "exact", dmat=dmat)
    a, b = res.endpoints
    if a == b:  # single-vertex graph
        return OrientedGeodesic((a,))
    dist_b = bfs_distances(g, b)
    path = [a]
    current = a
    while current != b:
        current = min(w for w in g.adj[current] if dist_b[w] == dist_b[current] - 1)
        path.append(current)
    return OrientedGeodesic(tuple(path))


def verify_geodesic(g: Graph, geo: OrientedGeodesic, dmat: np.ndarray | None = None) -> bool:
    """Check d(X_i, X_j) == |i - j| for all pairs of geodesic vertices."""
    if dmat is None:
        dmat = all_pairs_distances(g)
    idx = np.array(geo.vertices)
    sub = dmat[np.ix_(idx, idx)]
    want = np.abs(np.arange(len(idx))[:, None] - np.arange(len(idx))[None, :])
    return bool(np.array_equal(sub, want))


@dataclass(frozen=True)
class CellDecomposition:
    graph: Graph
    geodesic: OrientedGeodesic
    projection: tuple[int, ...]  # per-vertex geodesic index n(v)
    dist_to_geodesic: tuple[int, ...]  # per-vertex d(v, X_{n(v)})

    @property
    def cells(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.geodesic.vertices))}
        for v, i in enumerate(self.projection):
            out[i].append(v)
        return out

    def cell_sizes(self) -> list[int]:
        sizes = [0] * len(self.geodesic.vertices)
        for i in self.projection:
            sizes[i] += 1
        return sizes

    def cell_diameters(self, dmat: np.ndarray | None = None) -> list[int]:
        """Cell diameters in the ambient graph metric."""
        if dmat is None:
            dmat = all_pairs_distances(self.graph)
        out = []
        for i, members in sorted(self.cells.items()):
            idx = np.array(members)
            out.append(int(dmat[np.ix_(idx, idx)].max()) if len(idx) else 0)
        return out

    def cell_radii(self) -> list[int]:
        """Max distance from a cell member to its geodesic vertex."""
        radii = [0] * len(self.geodesic.vertices)
        for v, i in enumerate(self.projection):
            radii[i] = max(radii[i], self.dist_to_geodesic[v])
        return radii


def project_cells(g: Graph, geo: OrientedGeodesic) -> CellDecomposition:
    """Assign every vertex to its nearest geodesic vertex.

    Multi-source BFS gives distances; labels are then resolved layer by
    layer as the minimum label over BFS parents, which equals the
    smallest geodesic index among all nearest geodesic vertices.
    """
    for x, y in zip(geo.vertices, geo.vertices[1:]):
        if y not in g.adj[x]:
            raise ValueError(f"geodesic step {x}-{y} is not an edge of the graph")
    n = g.n
    dist = [-1] * n
    label = [-1] * n
    layer = []
    for i, x in enumerate(geo.vertices):
        if dist[x] != -1:
            raise ValueError("geodesic repeats a vertex")
        dist[x] = 0
        label[x] = i
        layer.append(x)
    layers = [layer]
    while layers[-1]:
        nxt = []
        for u in layers[-1]:
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        layers.append(nxt)
    for depth, layer in enumerate(layers[1:], start=1):
        for w in layer:
            label[w] = min(
                label[u] for u in g.adj[w] if dist[u] == depth - 1
            )
    return CellDecomposition(g, geo, tuple(label), tuple(dist))


@dataclass(frozen=True)
class WindowStat:
    half_width: int
    cesaro: Fraction  # (1/(2n+1)) * sum of |K_m| over the window
    max_ratio: Fraction  # max |K_m| in window / (2n+1)
    clipped: bool  # window ran past a geodesic end


@dataclass(frozen=True)
class CellStats:
    sizes: list[int]
    center: int
    windows: list[WindowStat]


def cell_statistics(dec: CellDecomposition, center: int) -> CellStats:
    """Windowed averages of cell sizes around a geodesic index."""
    sizes = dec.cell_sizes()
    top = len(sizes) - 1
    if not 0 <= center <= top:
        raise ValueError(f"center index {center} outside geodesic range 0..{top}")
    windows = []
    max_half = max(center, top - center)
    for half in range(max_half + 1):
        lo = max(0, center - half)
        hi = min(top, center + half)
        chunk = sizes[lo : hi + 1]
        denom = 2 * half + 1
        windows.append(
            WindowStat(
                half_width=half,
                cesaro=Fraction(sum(chunk), denom),
                max_ratio=Fraction(max(chunk), denom),
                clipped=(lo != center - half or hi != center + half),
            )
        )
    return CellStats(sizes=sizes, center=center, windows=windows)


@dataclass(frozen=True)
class SegmentCorrespondence:
    """Explicit correspondence between a rescaled ball and [-A, A].

    Ball vertex v maps to clamp((n(v) - n(center))/r, -A, A); segment
    point x maps to the geodesic vertex of index floor(r*x), re-centered,
    with out-of-range parts of the segment assigned to the nearest in-ball
    geodesic vertex.  Per vertex the related segment points form an
    interval [image_lo, image_hi].
    """

    center: int
    half_width: float  # A
    scale: float  # r
    ball_vertices: tuple[int, ...]
    image_lo: tuple[float, ...]
    image_hi: tuple[float, ...]
    distortion: float


def segment_correspondence(
    g: Graph,
    dec: CellDecomposition,
    v: int,
    A: float,
    r: float,
    dmat: np.ndarray | None = None,
) -> SegmentCorrespondence:
    """Build the index correspondence on B(v, floor(A*r)) and measure it.

    The reported distortion is the exact supremum over the correspondence,
    the segment side handled analytically per-vertex as intervals.
    """
    if A <= 0 or r <= 0:
        raise ValueError("A and r must be positive")
    n_center = dec.projection[v]
    radius = int(A * r)
    dist_v = bfs_distances(g, v, cutoff=radius)
    members = sorted(
        (u for u in range(g.n) if 0 <= dist_v[u] <= radius),
        key=lambda u: (dist_v[u], u),
    )
    pos = {u: i for i, u in enumerate(members)}
    m = len(members)
    recentered = np.array(
        [dec.projection[u] - n_center for u in members], dtype=np.float64
    )
    images = np.clip(recentered / r, -A, A)
    lo = images.copy()
    hi = images.copy()
    # geodesic vertices inside the ball own x-intervals [j/r, (j+1)/r)
    owners = []
    for j, x in enumerate(dec.geodesic.vertices):
        if x in pos:
            owners.append((j - n_center, pos[x]))
    owners.sort()
    if owners:
        base = [(max(-A, j / r), min(A, (j + 1) / r)) for j, _ in owners]
        bounds = [-A]
        for (blo, bhi), (nlo, nhi) in zip(base, base[1:]):
            bounds.append((bhi + nlo) / 2 if bhi < nlo else bhi)
        bounds.append(A)
        for t, (_, p) in enumerate(owners):
            lo[p] = min(lo[p], bounds[t])
            hi[p] = max(hi[p], bounds[t + 1])
    if dmat is not None:
        D = dmat[np.ix_(members, members)].astype(np.float64)
    else:
        D = np.empty((m, m), dtype=np.float64)
        for i, u in enumerate(members):
            du = bfs_distances(g, u)
            D[i] = [du[w] for w in members]
    D /= r
    from .lineapprox import _interval_pair_distortion

    dis = _interval_pair_distortion(D, lo, hi)
    return SegmentCorrespondence(
        center=v,
        half_width=float(A),
        scale=float(r),
        ball_vertices=tuple(members),
        image_lo=tuple(lo),
        image_hi=tuple(hi),
        distortion=float(dis),
    )


def separation_components(
    g: Graph, dec: CellDecomposition, N: int, center: int
) -> list[int]:
    """Component sizes after deleting all cells within N of the center index.

    Two large components is the finite signature of a line-like middle;
    sizes are sorted descending.
    """
    top = len(dec.geodesic.vertices) - 1
    if not 0 <= center <= top:
        raise ValueError(f"center index {center} outside geodesic range 0..{top}")
    if N < 0:
        raise ValueError("window half-width must be non-negative")
    removed = [abs(dec.projection[u] - center) <= N for u in range(g.n)]
    seen = [False] * g.n
    sizes = []
    for start in range(g.n):
        if removed[start] or seen[start]:
            continue
        count = 0
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            count += 1
            for w in g.adj[u]:
                if not removed[w] and not seen[w]:
                    seen[w] = True
                    queue.append(w)
        sizes.append(count)
    return sorted(sizes, reverse=True)


def growth_profile(g: Graph, v: int, r_max: int) -> list[Fraction]:
    """|B_r(v)| / r for r = 1..r_max (exact ball sizes)."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    dist = bfs_distances(g, v)
    counts = np.bincount(dist, minlength=r_max + 1)
    sizes = np.cumsum(counts)
    top = len(sizes) - 1
    return [
        Fraction(int(sizes[min(r, top)]), r) for r in range(1, r_max + 1)
    ]


def decomposition_to_json(dec: CellDecomposition, dmat: np.ndarray | None = None) -> dict:
    return {
        "geodesic": list(dec.geodesic.vertices),
        "projection": list(dec.projection),
        "cell_sizes": dec.cell_sizes(),
        "cell_diameters": dec.cell_diameters(dmat),
    }


def check_paper_cell_inequality(dec: CellDecomposition, dmat: np.ndarray | None = None) -> list[int]:
    """Indices where |K_n| < diam(K_n), returned for reporting.

    The provable containment gives d(v, X_n) <= |K_n| - 1 for v in K_n;
    whether |K_n| >= diam(K_n) with ambient diameters also holds is
    measured empirically rather than asserted.
    """
    sizes = dec.cell_sizes()
    diams = dec.cell_diameters(dmat)
    return [i for i, (s, d) in enumerate(zip(sizes, diams)) if s < d]
