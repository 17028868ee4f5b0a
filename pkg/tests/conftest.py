import itertools

import numpy as np
import pytest

from ftvn import get_instance


@pytest.fixture(scope="session")
def rn2():
    return get_instance("rn:2")


@pytest.fixture(scope="session")
def rn3():
    return get_instance("rn:3")


@pytest.fixture(scope="session")
def sym2():
    return get_instance("sym:2")


@pytest.fixture(scope="session")
def sym3():
    return get_instance("sym:3")


@pytest.fixture(scope="session")
def spin4():
    return get_instance("spin:4")


# ---------------------------------------------------------------------------
# independent oracles (never reuse the code paths under test)

def brute_orbit_rn(q):
    """All points with the same sorted coordinates: plain permutation listing."""
    return np.array(sorted(set(itertools.permutations(np.asarray(q, float).tolist()))))


def enumerate_polytope_vertices(a_ub, b_ub, tol=1e-9):
    """Vertex enumeration for {q : A q <= b}: solve every n x n subsystem and
    keep feasible solutions.  Exponential, test-scale only."""
    a_ub = np.asarray(a_ub, float)
    b_ub = np.asarray(b_ub, float)
    m, n = a_ub.shape
    verts = []
    for rows in itertools.combinations(range(m), n):
        sub = a_ub[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        v = np.linalg.solve(sub, b_ub[list(rows)])
        if np.all(a_ub @ v <= b_ub + tol * (1.0 + np.abs(b_ub))):
            verts.append(v)
    return np.array(verts) if verts else np.zeros((0, n))


def random_symmetric(rng, n):
    g = rng.standard_normal((n, n))
    return 0.5 * (g + g.T)
