"""Exact canonical codes for finite rooted graphs.

The code of a rooted graph is a byte string that two inputs share exactly
when they are isomorphic by a root-preserving isomorphism.  It is computed
by iterative color refinement seeded with distance-from-root layers,
followed by individualization backtracking over the first ambiguous color
class; the code is the lexicographically minimal adjacency encoding over
all branches.  No hashing is involved, so codes are stable across runs
and collisions are impossible.

Exponential worst cases exist (highly symmetric graphs) but the balls
handled at desk scale are small and layer-structured, where refinement
does nearly all the work.
"""

from __future__ import annotations

from .graphs import Graph, RootedGraph, bfs_distances


def _refine(adj: tuple[tuple[int, ...], ...], colors: list[int]) -> list[int]:
    """Refine colors by neighbor-color multisets until the partition is stable.

    Color ids are ranks of (old color, sorted neighbor colors) signatures,
    which depend only on the isomorphism class of the colored graph.
    """
    n = len(adj)
    while True:
        sigs = [
            (colors[u], tuple(sorted(colors[v] for v in adj[u]))) for u in range(n)
        ]
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[sig] for sig in sigs]
        if new == colors:
            return colors
        colors = new


def _first_ambiguous_class(colors: list[int]) -> list[int] | None:
    """Vertices of the smallest color that occurs more than once."""
    by_color: dict[int, list[int]] = {}
    for u, c in enumerate(colors):
        by_color.setdefault(c, []).append(u)
    for c in sorted(by_color):
        if len(by_color[c]) > 1:
            return by_color[c]
    return None


def _encode_discrete(adj, colors: list[int]) -> bytes:
    """Adjacency encoding under the discrete coloring (color = position)."""
    n = len(adj)
    pos = colors  # discrete: colors are a permutation of 0..n-1
    edges = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v]))
        for u in range(n)
        for v in adj[u]
        if u < v
    )
    body = ";".join(f"{a},{b}" for a, b in edges)
    return f"{n}|{body}".encode("ascii")


def _canonical_search(adj, colors: list[int]) -> bytes:
    colors = _refine(adj, colors)
    cell = _first_ambiguous_class(colors)
    if cell is None:
        return _encode_discrete(adj, colors)
    best: bytes | None = None
    for w in cell:
        branched = [2 * c + (0 if u == w else 1) for u, c in enumerate(colors)]
        code = _canonical_search(adj, branched)
        if best is None or code < best:
            best = code
    return best


def canonical_code(rg: RootedGraph) -> bytes:
    """Canonical byte code of the rooted-isomorphism class of ``rg``."""
    dist = bfs_distances(rg.graph, rg.root)
    return _canonical_search(rg.graph.adj, list(dist))


def rooted_isomorphic(a: RootedGraph, b: RootedGraph) -> bool:
    if a.graph.n != b.graph.n or a.graph.edge_count != b.graph.edge_count:
        return False
    return canonical_code(a) == canonical_code(b)
