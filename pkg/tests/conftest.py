"""Shared instance generators for the test suite."""

import random

from tangletree.graphs import Graph


def random_graph(seed, lo=6, hi=12):
    """Seeded connected graph: random spanning tree plus random extra edges."""
    rng = random.Random(seed)
    n = rng.randint(lo, hi)
    edges = set()
    verts = list(range(n))
    rng.shuffle(verts)
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add(frozenset({verts[i], verts[j]}))
    p = rng.uniform(0.2, 0.5)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add(frozenset({u, v}))
    return Graph(n, edges)
