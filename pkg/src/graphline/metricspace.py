"""Pointed finite metric spaces, correspondences, and exact small GH.

The pointed Gromov-Hausdorff distance between (X, x0) and (Y, y0) is half
the infimal distortion over correspondences containing the basepoint pair.
Every correspondence contains a sub-correspondence of the form
graph(f) + graph(g)^T for maps f: X -> Y, g: Y -> X fixing basepoints,
and distortion is monotone under inclusion, so minimizing over such map
pairs is exact.  ``gh_exact_small`` does that with branch-and-bound and is
guarded to small instances; it exists as an oracle for the scalable bound
machinery, not as a general-purpose solver.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

VALIDATION_TOL = 1e-9
GH_EXACT_MAX_POINTS = 8


class MetricError(ValueError):
    """Raised for invalid metric tables or correspondences."""


class PointedFiniteMetricSpace:
    """Point set 0..n-1 with a symmetric distance table and a basepoint."""

    __slots__ = ("dist", "basepoint", "n")

    def __init__(self, dist, basepoint: int = 0, validate: bool = True):
        d = np.asarray(dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise MetricError("distance table must be square")
        self.dist = d
        self.n = d.shape[0]
        if not 0 <= basepoint < self.n:
            raise MetricError(f"basepoint {basepoint} out of range")
        self.basepoint = basepoint
        if validate:
            self._validate()

    def _validate(self):
        d = self.dist
        if np.any(d < -VALIDATION_TOL):
            raise MetricError("distances must be non-negative")
        if np.abs(np.diagonal(d)).max(initial=0.0) > VALIDATION_TOL:
            raise MetricError("diagonal must be zero")
        if np.abs(d - d.T).max(initial=0.0) > VALIDATION_TOL:
            raise MetricError("distance table must be symmetric")
        for i in range(self.n):
            slack = d - (d[i][None, :] + d[:, i][:, None])
            if slack.max(initial=0.0) > VALIDATION_TOL:
                j, k = np.unravel_index(int(np.argmax(slack)), d.shape)
                raise MetricError(
                    f"triangle inequality fails on ({j},{i},{k}): "
                    f"{d[j, k]} > {d[j, i]} + {d[i, k]}"
                )

    @property
    def radius(self) -> float:
        """Largest distance from the basepoint."""
        return float(self.dist[self.basepoint].max())

    @property
    def diam(self) -> float:
        return float(self.dist.max())

    @classmethod
    def from_points_on_line(cls, coords, basepoint: int = 0) -> "PointedFiniteMetricSpace":
        c = np.asarray(coords, dtype=np.float64)
        return cls(np.abs(c[:, None] - c[None, :]), basepoint, validate=False)


@dataclass(frozen=True)
class Segment:
    """The interval [-k, k] pointed at 0, handled analytically."""

    half_length: float

    def __post_init__(self):
        if self.half_length <= 0:
            raise ValueError("half_length must be positive")

    def net(self, points: int) -> PointedFiniteMetricSpace:
        """Odd-sized uniform net of the segment; always contains 0."""
        if points < 3 or points % 2 == 0:
            raise ValueError("net needs an odd number of points >= 3")
        k = self.half_length
        coords = np.linspace(-k, k, points)
        return PointedFiniteMetricSpace.from_points_on_line(coords, points // 2)


@dataclass(frozen=True)
class Correspondence:
    """Relation between two pointed spaces covering both sides."""

    pairs: frozenset[tuple[int, int]]
    n_x: int
    n_y: int
    basepoint_x: int
    basepoint_y: int

    def __post_init__(self):
        xs = {p[0] for p in self.pairs}
        ys = {p[1] for p in self.pairs}
        if xs != set(range(self.n_x)):
            raise MetricError("correspondence does not cover the first space")
        if ys != set(range(self.n_y)):
            raise MetricError("correspondence does not cover the second space")
        if (self.basepoint_x, self.basepoint_y) not in self.pairs:
            raise MetricError("correspondence is missing the basepoint pair")

    @classmethod
    def full(cls, X: PointedFiniteMetricSpace, Y: PointedFiniteMetricSpace):
        pairs = frozenset(itertools.product(range(X.n), range(Y.n)))
        return cls(pairs, X.n, Y.n, X.basepoint, Y.basepoint)

    @classmethod
    def identity(cls, X: PointedFiniteMetricSpace):
        pairs = frozenset((i, i) for i in range(X.n))
        return cls(pairs, X.n, X.n, X.basepoint, X.basepoint)


def distortion(
    R: Correspondence, X: PointedFiniteMetricSpace, Y: PointedFiniteMetricSpace
) -> float:
    """max |d_X(x,x') - d_Y(y,y')| over pairs of related pairs."""
    if R.n_x != X.n or R.n_y != Y.n:
        raise MetricError("correspondence size does not match the spaces")
    if R.basepoint_x != X.basepoint or R.basepoint_y != Y.basepoint:
        raise MetricError("correspondence basepoints do not match the spaces")
    pairs = np.array(sorted(R.pairs), dtype=np.intp)
    dx = X.dist[pairs[:, 0][:, None], pairs[:, 0][None, :]]
    dy = Y.dist[pairs[:, 1][:, None], pairs[:, 1][None, :]]
    return float(np.abs(dx - dy).max())


def gh_exact_small(
    X: PointedFiniteMetricSpace, Y: PointedFiniteMetricSpace
) -> float:
    """Exact pointed GH distance, for small instances only.

    Branch-and-bound over map pairs (f, g) with f(x0)=y0, g(y0)=x0,
    scoring max of the f-side, g-side, and cross distortions.
    """
    if X.n > GH_EXACT_MAX_POINTS or Y.n > GH_EXACT_MAX_POINTS:
        raise MetricError(
            f"gh_exact_small is guarded to {GH_EXACT_MAX_POINTS} points per space"
        )
    DX, DY = X.dist, Y.dist
    bx, by = X.basepoint, Y.basepoint
    order_x = [bx] + [i for i in range(X.n) if i != bx]
    order_y = [by] + [j for j in range(Y.n) if j != by]

    best = max(X.diam, Y.diam)  # distortion of the full correspondence

    f = np.full(X.n, -1, dtype=np.intp)
    g = np.full(Y.n, -1, dtype=np.intp)

    def extend_g(pos: int, cur: float):
        nonlocal best
        if cur >= best:
            return
        if pos == Y.n:
            best = cur
            return
        y = order_y[pos]
        candidates = []
        for u in range(X.n):
            m = cur
            for q in range(pos):
                yq = order_y[q]
                m = max(m, abs(DX[u, g[yq]] - DY[y, yq]))
                if m >= best:
                    break
            else:
                # cross terms against the complete map f
                for x in range(X.n):
                    m = max(m, abs(DX[x, u] - DY[f[x], y]))
                    if m >= best:
                        break
                else:
                    candidates.append((m, u))
        for m, u in sorted(candidates):
            if m >= best:
                break
            g[y] = u
            extend_g(pos + 1, m)
        g[y] = -1

    def extend_f(pos: int, cur: float):
        nonlocal best
        if cur >= best:
            return
        if pos == X.n:
            g[by] = bx
            start = cur
            for x in range(X.n):  # cross terms fixed by g(y0)=x0
                start = max(start, abs(DX[x, bx] - DY[f[x], by]))
            extend_g(1, start)
            g[by] = -1
            return
        x = order_x[pos]
        candidates = []
        for yv in range(Y.n):
            m = cur
            for q in range(pos):
                xq = order_x[q]
                m = max(m, abs(DX[x, xq] - DY[yv, f[xq]]))
                if m >= best:
                    break
            else:
                candidates.append((m, yv))
        for m, yv in sorted(candidates):
            if m >= best:
                break
            f[x] = yv
            extend_f(pos + 1, m)
        f[x] = -1

    f[bx] = by
    extend_f(1, 0.0)
    f[bx] = -1
    return best / 2.0


def line_deviation(
    X: PointedFiniteMetricSpace | np.ndarray,
    sample_budget: int = 100_000,
    sample_size: int = 20_000,
) -> float:
    """How far the space is from lying on a line, witnessed by triples.

    For each triple, the best relabeling as left-middle-right leaves a gap
    |d(x,z) - d(x,y) - d(y,z)|; subsets of the real line make every gap
    zero.  Returns the max gap over all triples when their count fits
    ``sample_budget``, otherwise over a deterministic random sample, which
    keeps the value a valid lower-bound witness either way.
    """
    D = X.dist if isinstance(X, PointedFiniteMetricSpace) else np.asarray(X)
    n = D.shape[0]
    if n < 3:
        return 0.0
    total = n * (n - 1) * (n - 2) // 6
    if total <= sample_budget:
        idx = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(n), 3)),
            dtype=np.intp,
            count=3 * total,
        ).reshape(-1, 3)
    else:
        rng = np.random.default_rng(0x5EED ^ n)
        idx = rng.integers(0, n, size=(min(sample_size, sample_budget), 3))
    a = D[idx[:, 0], idx[:, 1]]
    b = D[idx[:, 1], idx[:, 2]]
    c = D[idx[:, 0], idx[:, 2]]
    dev = np.minimum(
        np.abs(c - a - b), np.minimum(np.abs(a - c - b), np.abs(b - a - c))
    )
    return float(dev.max(initial=0.0))


def n_triples(n: int) -> int:
    return math.comb(n, 3)
