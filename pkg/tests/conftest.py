import numpy as np
import pytest

from graphline.families import FamilySpec, generate


def distances_by_matrix_powers(g):
    """Independent all-pairs oracle: boolean adjacency reachability powers."""
    A = np.zeros((g.n, g.n), dtype=bool)
    for u in range(g.n):
        for w in g.adj[u]:
            A[u, w] = True
    D = np.full((g.n, g.n), -1, dtype=np.int64)
    np.fill_diagonal(D, 0)
    reach = np.eye(g.n, dtype=bool)
    d = 0
    while (D < 0).any():
        d += 1
        reach = reach | (reach @ A)
        newly = reach & (D < 0)
        D[newly] = d
        if d > g.n:
            raise AssertionError("oracle failed to converge; graph disconnected?")
    return D


@pytest.fixture(scope="session")
def comb93():
    return generate(FamilySpec("comb", n=9, r=3))


@pytest.fixture(scope="session")
def cycle10():
    return generate(FamilySpec("cycle", n=10))


@pytest.fixture(scope="session")
def path10():
    return generate(FamilySpec("path", n=10))
