"""Exact maximum cycle ratio of a timed marked graph.

The ratio ``max_C |C|_c / |C|_T`` is found by a parametric search on ``r``.
For a candidate ``r`` the arc weights ``c - r*T`` are examined by longest-path
relaxation, which reports whether the heaviest dicycle is positive, zero or
negative. That three-way answer steers a walk down the Stern-Brocot tree
(with galloping on long runs), so the optimum is hit exactly. The cycles of
weight zero at the optimum are the maximizing cycles; the reported witness is
the lexicographically smallest of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import CapExceeded, DomainError, NotStronglyConnected, PositiveCycle, RatioUnbounded
from .graph import (
    Arc,
    Marking,
    WeightedSymmetricDigraph,
    as_rational,
    lex_min_dicycle,
    zero_token_dicycle_exists,
)

DEFAULT_ENUMERATION_CAP = 12


@dataclass(frozen=True)
class CycleRatioResult:
    ratio: Fraction
    witness_cycle: tuple[int, ...]


@dataclass(frozen=True)
class Potentials:
    values: tuple[Fraction, ...]

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]


def _longest_walks(n: int, arcs: list[tuple[int, int, object]]):
    """Bellman-Ford for longest walks from a virtual source joined to every vertex.

    Returns the potential list, or ``None`` if a positive dicycle exists.
    """
    dist = [0] * n
    for _ in range(n):
        changed = False
        for u, v, w in arcs:
            cand = dist[u] + w
            if cand > dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            return dist
    return None


def has_positive_cycle(d: WeightedSymmetricDigraph, arc_weight: Mapping[Arc, object]) -> bool:
    """True iff some dicycle of ``d`` has strictly positive total ``arc_weight``."""
    arcs = [(u, v, as_rational(arc_weight[(u, v)])) for u, v in d.arcs]
    return _longest_walks(d.n, arcs) is None


def longest_walk_potentials(d: WeightedSymmetricDigraph, arc_weight: Mapping[Arc, object]) -> Potentials:
    """Maximum weight of a directed walk ending at each vertex (the empty walk counts as 0)."""
    arcs = [(u, v, as_rational(arc_weight[(u, v)])) for u, v in d.arcs]
    dist = _longest_walks(d.n, arcs)
    if dist is None:
        raise PositiveCycle("arc weights admit a positive dicycle; longest walks are unbounded")
    return Potentials(tuple(Fraction(x) for x in dist))


def parametric_weights(d: WeightedSymmetricDigraph, t: Marking, r) -> dict[Arc, Fraction]:
    """``c_uv - r*T_uv`` for every arc."""
    r = as_rational(r)
    return {a: c - r * t[a] for a, c in d.weights.items()}


def _check_strongly_connected(d: WeightedSymmetricDigraph) -> None:
    # symmetric digraph: strong connectivity == connectivity of the underlying graph
    if not d.underlying().is_connected():
        raise NotStronglyConnected("digraph must be strongly connected")


class _SignOracle:
    """Sign of the heaviest dicycle under integer weights ``q*c - p*T`` (i.e. ``r = p/q``)."""

    def __init__(self, d: WeightedSymmetricDigraph, t: Marking):
        self.n = d.n
        self.scale, cint = d.integer_weights()
        self.rows = [(u, v, cint[(u, v)], t[(u, v)]) for u, v in d.arcs]

    def weights(self, p: int, q: int):
        # r*T scaled by q and by the denominator LCM of c
        return [(u, v, q * c - p * self.scale * tok) for u, v, c, tok in self.rows]

    def sign(self, p: int, q: int) -> int:
        arcs = self.weights(p, q)
        dist = _longest_walks(self.n, arcs)
        if dist is None:
            return 1
        return 0 if self._tight_cycle(dist, arcs) is not None else -1

    def _tight_cycle(self, dist, arcs):
        succ = [[] for _ in range(self.n)]
        for u, v, w in arcs:
            if dist[u] + w == dist[v]:
                succ[u].append(v)
        return lex_min_dicycle(self.n, succ)

    def witness(self, p: int, q: int) -> tuple[int, ...]:
        arcs = self.weights(p, q)
        dist = _longest_walks(self.n, arcs)
        cyc = self._tight_cycle(dist, arcs)
        assert cyc is not None
        return cyc


def stern_brocot_search(sign: Callable[[int, int], int]) -> tuple[int, int]:
    """Find the positive rational ``p/q`` where a monotone three-way predicate hits zero.

    ``sign(p, q)`` must be +1 below the target, 0 at it and -1 above it.
    Runs of identical moves are taken by exponential-then-binary search.
    """
    lo = (0, 1)
    hi = (1, 0)
    while True:
        mid = (lo[0] + hi[0], lo[1] + hi[1])
        s = sign(*mid)
        if s == 0:
            return mid
        # advance the bound that lies on the same side as `mid`
        base, step = (lo, hi) if s > 0 else (hi, lo)

        def at(k):
            return (base[0] + k * step[0], base[1] + k * step[1])

        good = 1  # at(1) == mid is on side s
        bad = 2
        while True:
            sb = sign(*at(bad))
            if sb == 0:
                return at(bad)
            if sb != s:
                break
            good, bad = bad, bad * 2
        while bad - good > 1:
            k = (good + bad) // 2
            sk = sign(*at(k))
            if sk == 0:
                return at(k)
            if sk == s:
                good = k
            else:
                bad = k
        if s > 0:
            lo = at(good)
        else:
            hi = at(good)


def max_cycle_ratio(d: WeightedSymmetricDigraph, t: Marking) -> CycleRatioResult:
    """Exact ``max_C |C|_c / |C|_T`` over the dicycles of ``d`` with a witness cycle."""
    t.check_domain(d)
    if not d.arcs:
        raise DomainError("digraph has no dicycle")
    _check_strongly_connected(d)
    if zero_token_dicycle_exists(d, t):
        raise RatioUnbounded("a dicycle carries no tokens")
    oracle = _SignOracle(d, t)
    p, q = stern_brocot_search(oracle.sign)
    return CycleRatioResult(Fraction(p, q), oracle.witness(p, q))


def compare_ratio(d: WeightedSymmetricDigraph, t: Marking, r) -> int:
    """Sign of ``max_cycle_ratio(d, t) - r`` from a single relaxation run.

    Assumes every dicycle carries a token.
    """
    r = as_rational(r)
    if r <= 0:
        return 1
    return _SignOracle(d, t).sign(r.numerator, r.denominator)


def enumerate_dicycles(d: WeightedSymmetricDigraph, cap: int = DEFAULT_ENUMERATION_CAP) -> list[tuple[int, ...]]:
    """Every simple dicycle exactly once, rooted at its least vertex.

    Deterministic order: by root, then depth-first with ascending successors.
    """
    if d.n > cap:
        raise CapExceeded("enumeration_cap", cap, f"digraph has {d.n} vertices")
    succ = [sorted(s) for s in d.successors]
    cycles = []
    for s in range(d.n):
        path = [s]
        on_path = {s}

        def dfs(x):
            for y in succ[x]:
                if y == s and len(path) >= 2:
                    cycles.append(tuple(path))
                elif y > s and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    dfs(y)
                    path.pop()
                    on_path.discard(y)

        dfs(s)
    return cycles


def cycle_weight(d: WeightedSymmetricDigraph, cycle: tuple[int, ...]) -> Fraction:
    return sum((d.weight(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))), Fraction(0))


def cycle_tokens(t: Marking, cycle: tuple[int, ...]) -> int:
    return sum(t[(cycle[i], cycle[(i + 1) % len(cycle)])] for i in range(len(cycle)))


def brute_force_max_cycle_ratio(
    d: WeightedSymmetricDigraph, t: Marking, cap: int = DEFAULT_ENUMERATION_CAP
) -> CycleRatioResult:
    """Oracle: enumerate every dicycle and take the best ratio (lexicographic tie-break)."""
    best = None
    for cyc in enumerate_dicycles(d, cap):
        tokens = cycle_tokens(t, cyc)
        if tokens == 0:
            raise RatioUnbounded(f"dicycle {cyc} carries no tokens")
        r = cycle_weight(d, cyc) / tokens
        if best is None or r > best.ratio or (r == best.ratio and cyc < best.witness_cycle):
            best = CycleRatioResult(r, cyc)
    if best is None:
        raise DomainError("digraph has no dicycle")
    return best
