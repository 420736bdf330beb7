import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphline.graphs import all_pairs_distances
from graphline.families import FamilySpec, generate
from graphline.metricspace import (
    Correspondence,
    MetricError,
    PointedFiniteMetricSpace,
    Segment,
    distortion,
    gh_exact_small,
    line_deviation,
)


def space_from_points(points, basepoint=0, metric="l1"):
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    diff = np.abs(pts[:, None, :] - pts[None, :, :])
    D = diff.sum(axis=2) if metric == "l1" else np.sqrt((diff**2).sum(axis=2))
    return PointedFiniteMetricSpace(D, basepoint)


def brute_force_gh(X, Y):
    """Plain enumeration over all basepoint-fixing map pairs; no pruning."""
    best = math.inf
    nx, ny = X.n, Y.n
    others_x = [i for i in range(nx) if i != X.basepoint]
    others_y = [j for j in range(ny) if j != Y.basepoint]
    for f_imgs in itertools.product(range(ny), repeat=len(others_x)):
        f = {X.basepoint: Y.basepoint}
        f.update(zip(others_x, f_imgs))
        for g_imgs in itertools.product(range(nx), repeat=len(others_y)):
            g = {Y.basepoint: X.basepoint}
            g.update(zip(others_y, g_imgs))
            pairs = [(x, f[x]) for x in range(nx)] + [(g[y], y) for y in range(ny)]
            dis = max(
                abs(X.dist[x1, x2] - Y.dist[y1, y2])
                for (x1, y1) in pairs
                for (x2, y2) in pairs
            )
            best = min(best, dis)
    return best / 2


def test_validation_rejects_bad_tables():
    with pytest.raises(MetricError):
        PointedFiniteMetricSpace(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(MetricError):
        PointedFiniteMetricSpace(np.array([[1.0]]))
    bad_triangle = np.array(
        [[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]]
    )
    with pytest.raises(MetricError):
        PointedFiniteMetricSpace(bad_triangle)
    with pytest.raises(MetricError):
        PointedFiniteMetricSpace(np.zeros((2, 2)), basepoint=5)


def test_distortion_identity_is_zero():
    X = space_from_points([0.0, 1.0, 3.0])
    assert distortion(Correspondence.identity(X), X, X) == 0


def test_distortion_full_bounded_by_diameter():
    X = space_from_points([0.0, 1.0, 3.0])
    Y = space_from_points([0.0, 2.0])
    dis = distortion(Correspondence.full(X, Y), X, Y)
    assert dis <= max(X.diam, Y.diam)
    assert dis == X.diam  # realized: both X-extremes pair with one Y point


def test_distortion_two_points_vs_one():
    X = space_from_points([0.0, 1.0])
    Y = space_from_points([0.0])
    only = Correspondence.full(X, Y)
    assert distortion(only, X, Y) == 1


def test_distortion_monotone_under_added_pairs():
    rng = random.Random(3)
    for _ in range(30):
        X = space_from_points([rng.uniform(0, 5) for _ in range(4)])
        Y = space_from_points([rng.uniform(0, 5) for _ in range(3)])
        base = set()
        for x in range(4):
            base.add((x, rng.randrange(3)))
        for y in range(3):
            base.add((rng.randrange(4), y))
        base.add((0, 0))
        R1 = Correspondence(frozenset(base), 4, 3, 0, 0)
        extra = base | {(rng.randrange(4), rng.randrange(3))}
        R2 = Correspondence(frozenset(extra), 4, 3, 0, 0)
        assert distortion(R2, X, Y) >= distortion(R1, X, Y) - 1e-12


def test_correspondence_coverage_enforced():
    with pytest.raises(MetricError):
        Correspondence(frozenset({(0, 0)}), 2, 1, 0, 0)
    with pytest.raises(MetricError):
        Correspondence(frozenset({(0, 1), (1, 0)}), 2, 2, 0, 0)


def test_gh_identical_spaces():
    X = space_from_points([0.0, 1.0, 2.5])
    assert gh_exact_small(X, X) == 0


def test_gh_two_points_vs_point():
    X = space_from_points([0.0, 1.0])
    Y = space_from_points([0.0])
    assert gh_exact_small(X, Y) == 0.5


def test_gh_three_vs_two_on_line():
    X = space_from_points([-1.0, 0.0, 1.0], basepoint=1)
    Y = space_from_points([0.0, 1.0], basepoint=0)
    value = gh_exact_small(X, Y)
    assert value == brute_force_gh(X, Y) == 0.5


def test_gh_matches_brute_force_random():
    rng = random.Random(17)
    for _ in range(25):
        nx, ny = rng.randrange(2, 4), rng.randrange(2, 4)
        X = space_from_points([rng.uniform(0, 4) for _ in range(nx)])
        Y = space_from_points(
            [(rng.uniform(0, 4), rng.uniform(0, 4)) for _ in range(ny)]
        )
        assert abs(gh_exact_small(X, Y) - brute_force_gh(X, Y)) < 1e-12


def test_gh_guard():
    X = space_from_points(list(range(9)))
    with pytest.raises(MetricError):
        gh_exact_small(X, X)


@st.composite
def small_line_spaces(draw):
    coords = draw(
        st.lists(
            st.floats(min_value=-8, max_value=8, allow_nan=False),
            min_size=1,
            max_size=5,
        )
    )
    basepoint = draw(st.integers(min_value=0, max_value=len(coords) - 1))
    return space_from_points(coords, basepoint)


@settings(max_examples=40, deadline=None)
@given(small_line_spaces(), small_line_spaces())
def test_gh_symmetric(X, Y):
    assert abs(gh_exact_small(X, Y) - gh_exact_small(Y, X)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(small_line_spaces(), small_line_spaces(), small_line_spaces())
def test_gh_triangle_inequality(X, Y, Z):
    dxy = gh_exact_small(X, Y)
    dyz = gh_exact_small(Y, Z)
    dxz = gh_exact_small(X, Z)
    assert dxz <= dxy + dyz + 1e-9


def test_line_deviation_path_metric(path10):
    D = all_pairs_distances(path10).astype(float)
    X = PointedFiniteMetricSpace(D, 0, validate=False)
    assert line_deviation(X) == 0


def test_line_deviation_c5():
    g = generate(FamilySpec("cycle", n=5))
    D = all_pairs_distances(g).astype(float)
    X = PointedFiniteMetricSpace(D, 0, validate=False)
    # oracle: enumerate all 10 triples directly
    best = 0.0
    for i, j, k in itertools.combinations(range(5), 3):
        a, b, c = D[i, j], D[j, k], D[i, k]
        best = max(best, min(abs(c - a - b), abs(a - c - b), abs(b - a - c)))
    assert best == 1
    assert line_deviation(X) == 1


def test_line_deviation_star():
    # center + 3 leaves at distance 1: the leaf triple is pairwise 2,
    # every relabeling leaves gap |2 - 4| = 2
    D = np.full((4, 4), 2.0)
    np.fill_diagonal(D, 0.0)
    D[0, 1:] = 1.0
    D[1:, 0] = 1.0
    X = PointedFiniteMetricSpace(D, 0)
    assert line_deviation(X) == 2


def test_line_deviation_zero_on_line_subsets():
    rng = random.Random(8)
    for _ in range(20):
        pts = sorted(rng.uniform(-10, 10) for _ in range(rng.randrange(3, 12)))
        X = space_from_points(pts)
        assert line_deviation(X) <= 1e-12


def test_line_deviation_sampled_is_lower_witness():
    rng = random.Random(12)
    pts = [(rng.uniform(0, 9), rng.uniform(0, 9)) for _ in range(40)]
    X = space_from_points(pts)
    full = line_deviation(X, sample_budget=10**6)
    sampled = line_deviation(X, sample_budget=100, sample_size=64)
    assert 0 <= sampled <= full


def test_segment_net():
    seg = Segment(2.0)
    net = seg.net(5)
    assert net.n == 5
    assert net.dist[0, -1] == 4.0
    assert net.basepoint == 2
    with pytest.raises(ValueError):
        seg.net(4)
    with pytest.raises(ValueError):
        Segment(0.0)
