import json
import random
from fractions import Fraction

import pytest

from graphline.canonical import canonical_code
from graphline.families import FamilySpec, generate
from graphline.graphs import Graph, RootedGraph, ball
from graphline.localtopology import (
    BallCensus,
    ball_census,
    census_distance,
    d_loc,
    locality_radius,
)


def test_locality_radius_identical_inputs(comb93):
    rg = RootedGraph(comb93, 4)
    res = locality_radius(rg, rg, 10)
    assert res.radius == 10 and res.at_cap


def test_locality_radius_cycles_c100_c200():
    a = RootedGraph(generate(FamilySpec("cycle", n=100)), 0)
    b = RootedGraph(generate(FamilySpec("cycle", n=200)), 7)
    res = locality_radius(a, b, 60)
    assert res.radius == 49 and not res.at_cap
    # radius-49 balls are 99-vertex paths; at 50 one closes into the cycle
    assert ball(a.graph, a.root, 49).graph.n == 99
    assert ball(a.graph, a.root, 50).graph.n == 100


def test_locality_radius_path_end_vs_cycle():
    p4_end = RootedGraph(generate(FamilySpec("path", n=4)), 0)
    c10 = RootedGraph(generate(FamilySpec("cycle", n=10)), 3)
    res = locality_radius(p4_end, c10, 10)
    assert res.radius == 0 and not res.at_cap


def test_d_loc_values():
    a = RootedGraph(generate(FamilySpec("cycle", n=100)), 0)
    b = RootedGraph(generate(FamilySpec("cycle", n=200)), 0)
    res = d_loc(a, b, 60)
    assert res.value == Fraction(1, 2**49) and not res.at_cap
    same = d_loc(a, a, 30)
    assert same.value == Fraction(1, 2**30) and same.at_cap
    p4_end = RootedGraph(generate(FamilySpec("path", n=4)), 0)
    c10 = RootedGraph(generate(FamilySpec("cycle", n=10)), 0)
    assert d_loc(p4_end, c10, 10).value == 1


def test_d_loc_ultrametric_property():
    rng = random.Random(5)
    pool = [
        RootedGraph(generate(FamilySpec("comb", n=5, r=2)), rng.randrange(8)),
        RootedGraph(generate(FamilySpec("cycle", n=12)), 0),
        RootedGraph(generate(FamilySpec("path", n=7)), 3),
        RootedGraph(generate(FamilySpec("grid", width=3, height=3)), 4),
    ]
    cap = 6
    for _ in range(20):
        a, b, c = (rng.choice(pool) for _ in range(3))
        dab = d_loc(a, b, cap).value
        dbc = d_loc(b, c, cap).value
        dac = d_loc(a, c, cap).value
        assert dac <= max(dab, dbc)


def test_census_cycle_single_class(cycle10):
    census = ball_census(cycle10, 1)
    assert len(census.frequencies) == 1
    assert list(census.frequencies.values()) == [Fraction(1)]


def test_census_torus_single_class():
    torus = generate(FamilySpec("torus", width=5, height=6))
    for r in (1, 2):
        census = ball_census(torus, r)
        assert len(census.frequencies) == 1


def test_census_path10(path10):
    census = ball_census(path10, 1)
    end = RootedGraph(Graph.from_edges(2, [(0, 1)]), 0)
    interior = RootedGraph(Graph.from_edges(3, [(0, 1), (0, 2)]), 0)
    freqs = {
        canonical_code(end): Fraction(2, 11),
        canonical_code(interior): Fraction(9, 11),
    }
    assert census.frequencies == freqs


def test_census_frequencies_sum_to_one(comb93):
    for r in (0, 1, 2, 5):
        census = ball_census(comb93, r)
        assert sum(census.frequencies.values()) == 1


def test_census_distance_cycles():
    c100 = ball_census(generate(FamilySpec("cycle", n=100)), 2)
    c200 = ball_census(generate(FamilySpec("cycle", n=200)), 2)
    assert census_distance(c100, c200) == 0


def test_census_distance_disjoint_support():
    a = ball_census(generate(FamilySpec("cycle", n=20)), 1)
    b = ball_census(generate(FamilySpec("path", n=1)), 1)
    assert census_distance(a, b) == 1


def test_census_distance_radius_mismatch(cycle10):
    with pytest.raises(ValueError):
        census_distance(ball_census(cycle10, 1), ball_census(cycle10, 2))


def test_census_tv_monotone_in_radius():
    g1 = generate(FamilySpec("comb", n=20, r=4))
    g2 = generate(FamilySpec("comb", n=30, r=5))
    tvs = [
        census_distance(ball_census(g1, r), ball_census(g2, r)) for r in (0, 1, 2, 3)
    ]
    assert all(a <= b for a, b in zip(tvs, tvs[1:]))


def test_census_json_roundtrip(comb93):
    census = ball_census(comb93, 2)
    doc = json.loads(json.dumps(census.to_json()))
    back = BallCensus.from_json(doc)
    assert back.radius == census.radius
    assert back.frequencies == census.frequencies


def test_grid_line_census_near_half_line_class():
    g = generate(FamilySpec("grid_line", n=20))
    census = ball_census(g, 2)
    # the class of a 5-vertex path rooted at its center is the signature of
    # line interior vertices; it should hold close to half of the mass
    five_path = RootedGraph(
        Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 4)]), 0
    )
    code = canonical_code(five_path)
    freq = census.frequencies[code]
    assert abs(freq - Fraction(1, 2)) < Fraction(5, 100)
    # exact count: line interior vertices two or more steps from both ends
    assert freq == Fraction(397, 800)
