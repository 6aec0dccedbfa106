"""Shared graph builders for the test suite."""

import numpy as np

from magneto import GroupElement, build_graph


def cycle_graph(n, k, j, weight=1.0, mu=None):
    """Unit cycle 0-1-...-(n-1)-0 whose last edge carries xi^j in S^1_k."""
    one = GroupElement.identity("cyclic", k)
    edges = [(i, i + 1, weight, one) for i in range(n - 1)]
    edges.append((n - 1, 0, weight, GroupElement.cyclic(j, k)))
    return build_graph(n, edges, mu)


def circle_cycle(n, angles, weight=1.0, mu=None):
    """Cycle with S^1 signatures, one angle per edge (i, i+1 mod n)."""
    edges = [
        (i, (i + 1) % n, weight, GroupElement.circle(a)) for i, a in enumerate(angles)
    ]
    return build_graph(n, edges, mu)


def k2_graph(k, j):
    """Single edge carrying xi^j (always a tree, hence balanced)."""
    return build_graph(2, [(0, 1, 1.0, GroupElement.cyclic(j, k))])


def random_graph(rng, n, k, force_trivial_signature=False):
    """Connected random graph: random spanning tree plus a few extra edges."""
    pairs = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    seen = set(pairs)
    for _ in range(int(rng.integers(1, n + 1))):
        u, v = sorted(rng.choice(n, size=2, replace=False).tolist())
        if (u, v) not in seen:
            seen.add((u, v))
            pairs.append((u, v))
    edges = []
    for u, v in pairs:
        j = 0 if force_trivial_signature else int(rng.integers(0, k))
        w = float(rng.uniform(0.5, 2.0))
        edges.append((u, v, w, GroupElement.cyclic(j, k)))
    mu = rng.uniform(0.5, 2.0, size=n)
    return build_graph(n, edges, mu)


def random_unbalanced_graph(rng, n_max=7, k_max=4):
    while True:
        n = int(rng.integers(3, n_max + 1))
        k = int(rng.integers(2, k_max + 1))
        g = random_graph(rng, n, k)
        if not g.is_balanced()[0]:
            return g


def random_vertex_function(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def sorted_eigs(g, signed=True):
    from magneto import spectral_data

    return np.sort(spectral_data(g, signed=signed).eigenvalues)
