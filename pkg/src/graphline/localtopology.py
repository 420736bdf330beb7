"""Local topology of rooted graphs: ball comparison and ball censuses.

Two rooted graphs are close in the local metric when large balls around
their roots are isomorphic as rooted graphs; the distance is 2^(-R) for
the largest agreeing radius R.  A ball census records the exact frequency
of each radius-r ball isomorphism class over the vertices of a finite
graph, which is the statistic whose convergence defines distributional
limits of graph sequences rooted at a uniform vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canonical import canonical_code
from .graphs import Graph, RootedGraph, ball, bfs_distances


@dataclass(frozen=True)
class LocalityResult:
    radius: int
    at_cap: bool  # True: balls agreed at every radius up to the cap


def locality_radius(a: RootedGraph, b: RootedGraph, cap: int) -> LocalityResult:
    """Largest r <= cap at which radius-r balls around the roots agree.

    Radius-0 balls always agree, so the result is >= 0.  Ball agreement
    is monotone in r (an isomorphism of B_{r+1} restricts to one of B_r),
    so the first disagreeing radius determines the answer.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    dist_a = bfs_distances(a.graph, a.root)
    dist_b = bfs_distances(b.graph, b.root)
    for r in range(1, cap + 1):
        ball_a = ball(a.graph, a.root, r, dist=dist_a)
        ball_b = ball(b.graph, b.root, r, dist=dist_b)
        if canonical_code(ball_a) != canonical_code(ball_b):
            return LocalityResult(r - 1, False)
    return LocalityResult(cap, True)


@dataclass(frozen=True)
class DyadicUpperBounded:
    """A dyadic value that may be capped (true value possibly smaller)."""

    value: Fraction
    at_cap: bool


def d_loc(a: RootedGraph, b: RootedGraph, cap: int) -> DyadicUpperBounded:
    """Local distance 2^(-R); the at-cap flag marks an upper-bound-only value."""
    res = locality_radius(a, b, cap)
    return DyadicUpperBounded(Fraction(1, 2**res.radius), res.at_cap)


@dataclass(frozen=True)
class BallCensus:
    radius: int
    frequencies: dict[bytes, Fraction]

    def __post_init__(self):
        total = sum(self.frequencies.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"census frequencies sum to {total}, expected 1")
        if any(f <= 0 for f in self.frequencies.values()):
            raise ValueError("census frequencies must be positive")

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "frequencies": {
                code.hex(): {"num": f.numerator, "den": f.denominator}
                for code, f in sorted(self.frequencies.items())
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BallCensus":
        freqs = {
            bytes.fromhex(key): Fraction(val["num"], val["den"])
            for key, val in doc["frequencies"].items()
        }
        return cls(int(doc["radius"]), freqs)


def ball_census(g: Graph, r: int) -> BallCensus:
    """Frequency of each canonical radius-r ball class over all vertices."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    counts: dict[bytes, int] = {}
    for v in range(g.n):
        code = canonical_code(ball(g, v, r))
        counts[code] = counts.get(code, 0) + 1
    freqs = {code: Fraction(c, g.n) for code, c in counts.items()}
    return BallCensus(r, freqs)


def census_distance(c1: BallCensus, c2: BallCensus) -> Fraction:
    """Total-variation distance between two censuses of equal radius."""
    if c1.radius != c2.radius:
        raise ValueError(
            f"census radii differ: {c1.radius} vs {c2.radius}"
        )
    keys = set(c1.frequencies) | set(c2.frequencies)
    total = sum(
        abs(c1.frequencies.get(k, Fraction(0)) - c2.frequencies.get(k, Fraction(0)))
        for k in keys
    )
    return total / 2
