"""Finite-graph mass-transport identities and degree-tail statistics.

A transport function sends a non-negative amount of mass from u to v,
depending only on quantities invariant under doubly-rooted isomorphism
(here: degrees of the endpoints and their distance).  For a finite graph
with a uniformly chosen root, the average mass sent equals the average
mass received; ``mtp_check`` evaluates both sides exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .graphs import Graph, all_pairs_distances

# evaluator (g, u, v) -> non-negative rational
TransportFunction = Callable[[Graph, int, int], Fraction]


@dataclass(frozen=True)
class ProfileTransport:
    """Transport built from degree/distance terms, bound to one graph.

    Each term (coef, dist, deg_u_power, deg_v_power) contributes
    ``coef * deg(u)^p * deg(v)^q`` whenever d(u, v) == dist.  Distances
    are precomputed once at construction.
    """

    graph: Graph
    terms: tuple[tuple[Fraction, int, int, int], ...]

    def __post_init__(self):
        for coef, dist, pu, pv in self.terms:
            if coef < 0 or dist < 0 or pu < 0 or pv < 0:
                raise ValueError("transport terms must be non-negative")
        object.__setattr__(self, "_dmat", all_pairs_distances(self.graph))

    def __call__(self, g: Graph, u: int, v: int) -> Fraction:
        if g is not self.graph:
            raise ValueError("transport function is bound to a different graph")
        d = int(self._dmat[u, v])
        total = Fraction(0)
        for coef, dist, pu, pv in self.terms:
            if d == dist:
                total += coef * g.degree(u) ** pu * g.degree(v) ** pv
        return total


def adjacency_transport(g: Graph) -> ProfileTransport:
    """F(g,u,v) = 1 when u ~ v."""
    return ProfileTransport(g, ((Fraction(1), 1, 0, 0),))


def distance_indicator_transport(g: Graph, dist: int) -> ProfileTransport:
    """F(g,u,v) = 1 when d(u,v) == dist."""
    return ProfileTransport(g, ((Fraction(1), dist, 0, 0),))


def zero_transport(g: Graph, u: int, v: int) -> Fraction:
    return Fraction(0)


def mtp_check(g: Graph, F: TransportFunction) -> tuple[Fraction, Fraction]:
    """Both sides of the mass-transport identity, computed exactly.

    Returns ((1/|V|) sum_u sum_v F(u,v), (1/|V|) sum_u sum_v F(v,u)).
    The two must agree for every transport function; returning both lets
    callers verify the implementation rather than trust it.
    """
    sent = Fraction(0)
    received = Fraction(0)
    for u in range(g.n):
        for v in range(g.n):
            sent += F(g, u, v)
            received += F(g, v, u)
    return sent / g.n, received / g.n


def uniform_integrability_margin(family: list[Graph], M: int) -> Fraction:
    """Worst truncated degree mass over the family.

    max over graphs of (1/|V|) * sum_v deg(v) * 1(deg(v) > M).
    """
    if not family:
        raise ValueError("family must be non-empty")
    worst = Fraction(0)
    for g in family:
        mass = sum(d for d in g.degrees() if d > M)
        worst = max(worst, Fraction(mass, g.n))
    return worst
