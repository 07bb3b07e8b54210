"""Core data model: graphs, symmetric weighted digraphs, markings, orientations.

Vertices are always the dense integers ``0..n-1``. Every ratio, weight and
coloring point is a :class:`fractions.Fraction`, so equalities such as
``60/17`` versus ``7/2`` are decided exactly.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapExceeded, DomainError, NotAcyclic

Rational = Fraction
Arc = tuple[int, int]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


# ---------------------------------------------------------------------------
# generic digraph helpers on successor lists
# ---------------------------------------------------------------------------


def _reaches(succ: Sequence[Iterable[int]], start: int, target: int, blocked=()) -> bool:
    if start == target:
        return True
    seen = set(blocked)
    seen.add(start)
    stack = [start]
    while stack:
        x = stack.pop()
        for y in succ[x]:
            if y == target:
                return True
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def has_dicycle(n: int, succ: Sequence[Iterable[int]]) -> bool:
    """Kahn's algorithm: True iff the digraph given by successor lists has a dicycle."""
    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    queue = deque(u for u in range(n) if indeg[u] == 0)
    removed = 0
    while queue:
        u = queue.popleft()
        removed += 1
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return removed < n


def lex_min_dicycle(n: int, succ: Sequence[Iterable[int]]) -> tuple[int, ...] | None:
    """Lexicographically smallest simple dicycle, rotated to start at its least vertex.

    Returns ``None`` for an acyclic digraph. The cycle is listed without
    repeating the first vertex.
    """
    ordered = [sorted(set(s)) for s in succ]
    for s in range(n):
        # restrict to vertices >= s so the cycle's least vertex is s
        restricted = [[v for v in ordered[x] if v >= s] if x >= s else [] for x in range(n)]
        if not any(_reaches(restricted, v, s) for v in restricted[s]):
            continue
        path = [s]
        used = {s}
        cur = s
        while True:
            if len(path) >= 2 and s in restricted[cur]:
                return tuple(path)
            for v in restricted[cur]:
                if v in used:
                    continue
                if _reaches(restricted, v, s, blocked=used - {s}):
                    path.append(v)
                    used.add(v)
                    cur = v
                    break
            else:  # pragma: no cover - feasibility is maintained by construction
                raise AssertionError("lost the cycle while extending the path")
    return None


# ---------------------------------------------------------------------------
# undirected graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are normalised to sorted ``(u, v)`` pairs with ``u < v``.
    """

    n: int
    edges: tuple[Arc, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            pair = (min(u, v), max(u, v))
            if pair in norm:
                raise DomainError(f"duplicate edge {pair}")
            norm.add(pair)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Arc]) -> UndirectedGraph:
        return cls(n, tuple(tuple(e) for e in edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_index(self) -> dict[Arc, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DomainError("graph must be connected")

    def induced(self, vertices: Iterable[int]) -> tuple[UndirectedGraph, tuple[int, ...]]:
        """Induced subgraph relabelled densely; also returns new-index -> old-vertex."""
        keep = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return UndirectedGraph(len(keep), tuple(edges)), keep

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(not self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


def bfs_distances(g: UndirectedGraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def neighborhood(g: UndirectedGraph, u: int, k: int = 1) -> frozenset[int]:
    """Vertices at graph distance exactly ``k`` from ``u``."""
    if not 0 <= u < g.n:
        raise DomainError(f"vertex {u} out of range")
    if k < 0:
        raise DomainError("distance must be nonnegative")
    return frozenset(v for v, d in bfs_distances(g, u).items() if d == k)


def neighborhood_of_set(g: UndirectedGraph, s: Iterable[int]) -> frozenset[int]:
    """Open neighbourhood of a vertex set: vertices outside ``s`` adjacent to it."""
    s = set(s)
    for u in s:
        if not 0 <= u < g.n:
            raise DomainError(f"vertex {u} out of range")
    out = set()
    for u in s:
        out |= g.adjacency[u]
    return frozenset(out - s)


def line_graph(g: UndirectedGraph) -> UndirectedGraph:
    """Vertex ``i`` of the result is ``g.edges[i]``; adjacency means a shared endpoint."""
    edges = []
    for i, (a, b) in enumerate(g.edges):
        for j in range(i + 1, g.m):
            c, d = g.edges[j]
            if a in (c, d) or b in (c, d):
                edges.append((i, j))
    return UndirectedGraph(g.m, tuple(edges))


# ---------------------------------------------------------------------------
# weighted symmetric digraphs and markings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class WeightedSymmetricDigraph:
    """Symmetric digraph with a nonnegative rational weight on every arc."""

    n: int
    weights: Mapping[Arc, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        w = {}
        for (u, v), c in self.weights.items():
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise DomainError(f"bad arc {(u, v)}")
            w[(u, v)] = as_rational(c)
        for (u, v), c in w.items():
            if (v, u) not in w:
                raise DomainError(f"arc {(u, v)} present but {(v, u)} missing")
            if c < 0:
                raise DomainError(f"negative weight on arc {(u, v)}")
            if c + w[(v, u)] <= 0:
                raise DomainError(f"arc pair {(u, v)} has zero total weight")
        object.__setattr__(self, "weights", dict(sorted(w.items())))

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(self.weights)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succ = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            succ[u].append(v)
        return tuple(tuple(s) for s in succ)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        pred = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            pred[v].append(u)
        return tuple(tuple(p) for p in pred)

    def weight(self, u: int, v: int) -> Fraction:
        return self.weights[(u, v)]

    def underlying(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, tuple((u, v) for u, v in self.arcs if u < v))

    def scaled(self, factor) -> WeightedSymmetricDigraph:
        factor = as_rational(factor)
        if factor <= 0:
            raise DomainError("scale factor must be positive")
        return WeightedSymmetricDigraph(self.n, {a: c * factor for a, c in self.weights.items()})

    def denominator_lcm(self) -> int:
        return lcm(1, *(c.denominator for c in self.weights.values()))

    def integer_weights(self) -> tuple[int, dict[Arc, int]]:
        """Clear denominators: returns ``(L, {arc: L*c})`` with ``L`` the denominator LCM."""
        scale = self.denominator_lcm()
        return scale, {a: int(c * scale) for a, c in self.weights.items()}

    def max_pair_weight(self) -> Fraction:
        return max((c + self.weights[(v, u)] for (u, v), c in self.weights.items()), default=Fraction(0))


def to_symmetric_digraph(g: UndirectedGraph, weight=1) -> WeightedSymmetricDigraph:
    weight = as_rational(weight)
    if weight <= 0:
        raise DomainError("weight must be positive")
    arcs = {}
    for u, v in g.edges:
        arcs[(u, v)] = weight
        arcs[(v, u)] = weight
    return WeightedSymmetricDigraph(g.n, arcs)


@dataclass(frozen=True)
class Marking:
    """Token count on each arc of a host digraph."""

    tokens: Mapping[Arc, int]

    def __post_init__(self):
        t = {}
        for arc, k in self.tokens.items():
            if int(k) != k or k < 0:
                raise DomainError(f"token count on {arc} must be a nonnegative integer")
            t[tuple(arc)] = int(k)
        object.__setattr__(self, "tokens", dict(sorted(t.items())))

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, arc: Arc) -> int:
        return self.tokens[arc]

    def check_domain(self, d: WeightedSymmetricDigraph) -> None:
        if set(self.tokens) != set(d.weights):
            raise DomainError("marking is not defined on exactly the digraph's arcs")


def is_good_marking(d: WeightedSymmetricDigraph, t: Marking) -> bool:
    """One token per opposite-arc pair and no dicycle made of token-free arcs."""
    t.check_domain(d)
    for u, v in d.arcs:
        if t[(u, v)] + t[(v, u)] != 1:
            return False
    succ = [[] for _ in range(d.n)]
    for (u, v), k in t.tokens.items():
        if k == 0:
            succ[u].append(v)
    return not has_dicycle(d.n, succ)


def zero_token_dicycle_exists(d: WeightedSymmetricDigraph, t: Marking) -> bool:
    succ = [[] for _ in range(d.n)]
    for (u, v), k in t.tokens.items():
        if k == 0:
            succ[u].append(v)
    return has_dicycle(d.n, succ)


# ---------------------------------------------------------------------------
# acyclic orientations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AcyclicOrientation:
    """Orientation of every edge of ``host``; ``arcs[i]`` orients ``host.edges[i]``."""

    host: UndirectedGraph
    arcs: tuple[Arc, ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self._checked:
            return
        arcs = tuple(tuple(a) for a in self.arcs)
        if len(arcs) != self.host.m:
            raise DomainError("orientation must direct every edge exactly once")
        for (a, b), e in zip(arcs, self.host.edges):
            if (min(a, b), max(a, b)) != e:
                raise DomainError(f"arc {(a, b)} does not orient edge {e}")
        object.__setattr__(self, "arcs", arcs)
        succ = [[] for _ in range(self.host.n)]
        for a, b in arcs:
            succ[a].append(b)
        if has_dicycle(self.host.n, succ):
            raise NotAcyclic("orientation contains a directed cycle")

    @classmethod
    def from_arcs(cls, host: UndirectedGraph, arcs: Iterable[Arc]) -> AcyclicOrientation:
        """Build from any collection of directed edges covering every host edge once."""
        by_edge: dict[Arc, Arc] = {}
        for a, b in arcs:
            key = (min(a, b), max(a, b))
            if key not in host.edge_index:
                raise DomainError(f"{a}>{b} is not an edge of the graph")
            if key in by_edge:
                raise DomainError(f"edge {key} oriented twice")
            by_edge[key] = (a, b)
        missing = [e for e in host.edges if e not in by_edge]
        if missing:
            raise DomainError(f"unoriented edges: {missing}")
        return cls(host, tuple(by_edge[e] for e in host.edges))

    @classmethod
    def from_order(cls, host: UndirectedGraph, order: Sequence[int]) -> AcyclicOrientation:
        """Direct every edge from the earlier to the later vertex of ``order``."""
        rank = {v: i for i, v in enumerate(order)}
        arcs = tuple((u, v) if rank[u] < rank[v] else (v, u) for u, v in host.edges)
        return cls(host, arcs, _checked=True)

    @cached_property
    def out_degree(self) -> tuple[int, ...]:
        deg = [0] * self.host.n
        for a, _ in self.arcs:
            deg[a] += 1
        return tuple(deg)

    @cached_property
    def in_degree(self) -> tuple[int, ...]:
        deg = [0] * self.host.n
        for _, b in self.arcs:
            deg[b] += 1
        return tuple(deg)

    @property
    def sinks(self) -> frozenset[int]:
        return frozenset(v for v in range(self.host.n) if self.out_degree[v] == 0)

    @property
    def sources(self) -> frozenset[int]:
        return frozenset(v for v in range(self.host.n) if self.in_degree[v] == 0)

    def key(self) -> tuple[bool, ...]:
        """Compact hashable form: True where the edge points from low to high index."""
        return tuple(a < b for a, b in self.arcs)


def acyclic_orientations(g: UndirectedGraph, cap: int | None = None) -> Iterator[AcyclicOrientation]:
    """All acyclic orientations in a fixed DFS order.

    Edges are decided in ``g.edges`` order, trying low->high before high->low,
    and a branch is cut as soon as it closes a directed cycle.
    """
    m = g.m
    succ: list[set[int]] = [set() for _ in range(g.n)]
    chosen: list[Arc] = []
    count = 0

    def rec(i: int):
        nonlocal count
        if i == m:
            count += 1
            if cap is not None and count > cap:
                raise CapExceeded("orientation_cap", cap)
            yield AcyclicOrientation(g, tuple(chosen), _checked=True)
            return
        u, v = g.edges[i]
        for a, b in ((u, v), (v, u)):
            if _reaches(succ, b, a):
                continue
            succ[a].add(b)
            chosen.append((a, b))
            yield from rec(i + 1)
            chosen.pop()
            succ[a].discard(b)

    yield from rec(0)


def random_acyclic_orientation(g: UndirectedGraph, rng: random.Random) -> AcyclicOrientation:
    order = list(range(g.n))
    rng.shuffle(order)
    return AcyclicOrientation.from_order(g, order)


def marking_from_orientation(omega: AcyclicOrientation) -> Marking:
    """A token sits on arc ``uv`` exactly when ``omega`` directs the edge ``u -> v``.

    A vertex is then fireable iff it is a sink of ``omega``.
    """
    tokens = {}
    for a, b in omega.arcs:
        tokens[(a, b)] = 1
        tokens[(b, a)] = 0
    return Marking(tokens)


def orientation_from_marking(g: UndirectedGraph, t: Marking) -> AcyclicOrientation:
    """Inverse of :func:`marking_from_orientation` on good markings."""
    arcs = []
    for u, v in g.edges:
        tu, tv = t[(u, v)], t[(v, u)]
        if tu + tv != 1:
            raise DomainError(f"edge {(u, v)} does not carry exactly one token")
        arcs.append((u, v) if tu == 1 else (v, u))
    return AcyclicOrientation(g, tuple(arcs))


# ---------------------------------------------------------------------------
# colorings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CircularColoring:
    """Points on a circle of the given perimeter, identified with ``[0, perimeter)``."""

    perimeter: Fraction
    points: tuple[Fraction, ...]

    def __post_init__(self):
        p = as_rational(self.perimeter)
        if p <= 0:
            raise DomainError("perimeter must be positive")
        pts = tuple(as_rational(x) for x in self.points)
        for v, x in enumerate(pts):
            if not 0 <= x < p:
                raise DomainError(f"point of vertex {v} is {x}, outside [0, {p})")
        object.__setattr__(self, "perimeter", p)
        object.__setattr__(self, "points", pts)

    def rescaled(self, perimeter) -> CircularColoring:
        perimeter = as_rational(perimeter)
        f = perimeter / self.perimeter
        return CircularColoring(perimeter, tuple(x * f for x in self.points))


@dataclass(frozen=True)
class KdColoring:
    k: int
    d: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1 or self.k < 2 * self.d:
            raise DomainError(f"need k >= 2d >= 2, got k={self.k}, d={self.d}")
        colors = tuple(int(c) for c in self.colors)
        for v, c in enumerate(colors):
            if not 0 <= c < self.k:
                raise DomainError(f"color {c} of vertex {v} outside 0..{self.k - 1}")
        object.__setattr__(self, "colors", colors)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.k, self.d)
