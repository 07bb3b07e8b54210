from __future__ import annotations

import random
from functools import lru_cache

from circdyn.graph import UndirectedGraph, WeightedSymmetricDigraph, random_acyclic_orientation, marking_from_orientation

from connected_graphs import CONNECTED


def connected_graphs(max_n: int, min_n: int = 2):
    for n in range(min_n, max_n + 1):
        for edges in CONNECTED[n]:
            yield UndirectedGraph(n, tuple(map(tuple, edges)))


def random_connected(rng: random.Random, n: int, p: float | None = None) -> UndirectedGraph:
    while True:
        q = rng.uniform(0.25, 0.8) if p is None else p
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < q]
        g = UndirectedGraph(n, tuple(edges))
        if g.is_connected():
            return g


def random_weights(rng: random.Random, g: UndirectedGraph, lo: int = 1, hi: int = 4) -> WeightedSymmetricDigraph:
    w = {}
    for u, v in g.edges:
        w[(u, v)] = rng.randint(lo, hi)
        w[(v, u)] = rng.randint(lo, hi)
    return WeightedSymmetricDigraph(g.n, w)


def random_good_marking(rng: random.Random, g: UndirectedGraph):
    return marking_from_orientation(random_acyclic_orientation(g, rng))


def acyclic_orientation_count(g: UndirectedGraph) -> int:
    """|P(G, -1)| by deletion-contraction, independent of the enumerator."""

    @lru_cache(maxsize=None)
    def chrom_at_minus_one(n: int, edges: frozenset) -> int:
        if not edges:
            return (-1) ** n
        e = min(edges)
        u, v = e
        rest = edges - {e}
        merged = set()
        for a, b in rest:
            a = u if a == v else a
            b = u if b == v else b
            a, b = (a, b) if a < b else (b, a)
            merged.add((a, b))
        return chrom_at_minus_one(n, rest) - chrom_at_minus_one(n - 1, frozenset(merged))

    return abs(chrom_at_minus_one(g.n, frozenset(g.edges)))
