"""Circular chromatic numbers by three independent routes, plus the transforms between
circular colorings, periodic schedules and good markings.

Routes:

* :func:`chi_c_exact_kd` searches ``(k, d)``-colorings over the finite
  candidate set of ratios ``k/d``.
* :func:`chi_c_exact_minty` minimises the maximum cycle ratio over good
  markings (one per acyclic orientation).
* :func:`chi_c_via_dynamics` minimises ``p/m`` of the sink-reversal dynamics
  over acyclic orientations; :func:`chi_c_via_token_game` does the same with
  the weighted token game.

Circle convention: ``circ_dist(x, y, p)`` is measured in the increasing
direction, ``(y - x) mod p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import chromatic_number, independence_number
from .dynamics import replay_schedule, run_to_steady_state, sink_ratio_cached
from .errors import DomainError, GoodnessViolation, InadmissibleSchedule, InvalidColoring, PositiveCycle
from .graph import (
    AcyclicOrientation,
    CircularColoring,
    KdColoring,
    Marking,
    UndirectedGraph,
    WeightedSymmetricDigraph,
    acyclic_orientations,
    as_rational,
    has_dicycle,
    is_good_marking,
    lex_min_dicycle,
    marking_from_orientation,
    to_symmetric_digraph,
)
from .ratio import compare_ratio, longest_walk_potentials, max_cycle_ratio, parametric_weights

DEFAULT_ORIENTATION_CAP = 200_000


def circ_dist(x, y, p) -> Fraction:
    x, y, p = as_rational(x), as_rational(y), as_rational(p)
    if p <= 0:
        raise DomainError("perimeter must be positive")
    if not (0 <= x < p and 0 <= y < p):
        raise DomainError(f"points {x}, {y} must lie in [0, {p})")
    return (y - x) % p


def _check_vertices(d: WeightedSymmetricDigraph, phi: CircularColoring) -> None:
    if len(phi.points) != d.n:
        raise DomainError(f"coloring has {len(phi.points)} points for {d.n} vertices")


def verify_circular_coloring(d: WeightedSymmetricDigraph, phi: CircularColoring) -> bool:
    _check_vertices(d, phi)
    p = phi.perimeter
    pts = phi.points
    return all(circ_dist(pts[u], pts[v], p) >= c for (u, v), c in d.weights.items())


# ---------------------------------------------------------------------------
# (k, d)-colorings
# ---------------------------------------------------------------------------


def verify_kd_coloring(g: UndirectedGraph, f: KdColoring) -> bool:
    if len(f.colors) != g.n:
        raise DomainError(f"coloring has {len(f.colors)} colors for {g.n} vertices")
    for u, v in g.edges:
        diff = abs(f.colors[u] - f.colors[v])
        if not f.d <= diff <= f.k - f.d:
            return False
    return True


def kd_to_circular(f: KdColoring) -> CircularColoring:
    return CircularColoring(Fraction(f.k, f.d), tuple(Fraction(c, f.d) for c in f.colors))


def find_kd_coloring(g: UndirectedGraph, k: int, d: int) -> KdColoring | None:
    """Backtracking search for a ``(k, d)``-coloring.

    Vertices are colored in index order, colors tried ascending, with
    forward checking on bitmask domains. The first vertex of each component
    is pinned to color 0 (rotating all colors preserves validity).
    """
    if d < 1 or k < 2 * d:
        raise DomainError(f"need k >= 2d >= 2, got k={k}, d={d}")
    full = (1 << k) - 1
    compat = [sum(1 << b for b in range(k) if d <= abs(a - b) <= k - d) for a in range(k)]
    adj = [sorted(g.adjacency[v]) for v in range(g.n)]
    domains = [full] * g.n
    seen = set()
    for s in range(g.n):
        if s in seen:
            continue
        domains[s] = 1
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    colors = [-1] * g.n

    def rec(v: int) -> bool:
        if v == g.n:
            return True
        dom = domains[v]
        while dom:
            a = (dom & -dom).bit_length() - 1
            dom &= dom - 1
            saved = []
            ok = True
            for w in adj[v]:
                if w > v:
                    new = domains[w] & compat[a]
                    if new != domains[w]:
                        saved.append((w, domains[w]))
                        domains[w] = new
                        if not new:
                            ok = False
                            break
            if ok:
                colors[v] = a
                if rec(v + 1):
                    return True
            for w, old in saved:
                domains[w] = old
        colors[v] = -1
        return False

    if not rec(0):
        return None
    return KdColoring(k, d, tuple(colors))


def kd_candidates(g: UndirectedGraph) -> list[Fraction]:
    """Ratios ``k/d`` with ``k <= |V|``, ``d <= alpha`` and ``|V|/alpha <= k/d <= chi``, ascending."""
    n = g.n
    alpha = independence_number(g)
    chi = chromatic_number(g)
    lower = Fraction(n, alpha)
    out = set()
    for k in range(1, n + 1):
        for d in range(1, alpha + 1):
            if k < 2 * d:
                continue
            r = Fraction(k, d)
            if lower <= r <= chi:
                out.add(r)
    return sorted(out)


def _require_nontrivial(g: UndirectedGraph) -> None:
    g.require_connected()
    if g.m == 0:
        raise DomainError("graph needs at least one edge")


def chi_c_exact_kd(g: UndirectedGraph) -> tuple[Fraction, KdColoring]:
    """Least colorable candidate ratio, tried in lowest terms, with its coloring."""
    _require_nontrivial(g)
    for r in kd_candidates(g):
        f = find_kd_coloring(g, r.numerator, r.denominator)
        if f is not None:
            return r, f
    raise AssertionError("chi(G) itself is always a colorable candidate")  # pragma: no cover


# ---------------------------------------------------------------------------
# min-max over good markings, and the dynamic routes
# ---------------------------------------------------------------------------


def chi_c_exact_minty(
    d: WeightedSymmetricDigraph, orientation_cap: int = DEFAULT_ORIENTATION_CAP
) -> tuple[Fraction, Marking]:
    """Minimum over good markings of the maximum cycle ratio, with a minimising marking.

    A marking whose ratio is not strictly below the best so far is rejected
    after one relaxation run; ties keep the earlier marking.
    """
    g = d.underlying()
    _require_nontrivial(g)
    best = None
    witness = None
    for omega in acyclic_orientations(g, orientation_cap):
        t = marking_from_orientation(omega)
        if best is not None and compare_ratio(d, t, best) >= 0:
            continue
        r = max_cycle_ratio(d, t).ratio
        if best is None or r < best:
            best, witness = r, t
    return best, witness


def chi_c_via_dynamics(
    g: UndirectedGraph, orientation_cap: int = DEFAULT_ORIENTATION_CAP
) -> tuple[Fraction, AcyclicOrientation]:
    """Minimum of ``p_omega / m_omega`` over acyclic orientations, with the first minimiser."""
    _require_nontrivial(g)
    cache: dict = {}
    best = None
    witness = None
    for omega in acyclic_orientations(g, orientation_cap):
        r = sink_ratio_cached(omega, cache)
        if best is None or r < best:
            best, witness = r, omega
    return best, witness


def chi_c_via_token_game(
    d: WeightedSymmetricDigraph,
    orientation_cap: int = DEFAULT_ORIENTATION_CAP,
    pulse_cap: int | None = None,
) -> tuple[Fraction, Marking]:
    """Minimum of ``p/m`` of the weighted token game over good markings."""
    g = d.underlying()
    _require_nontrivial(g)
    best = None
    witness = None
    for omega in acyclic_orientations(g, orientation_cap):
        t = marking_from_orientation(omega)
        r = run_to_steady_state(d, t, pulse_cap).ratio
        if best is None or r < best:
            best, witness = r, t
    return best, witness


# ---------------------------------------------------------------------------
# colorings <-> schedules <-> markings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicSchedule:
    """Firing times ``offsets[u] + period*(k-1)`` for ``k = 1, 2, ...``."""

    period: Fraction
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        p = as_rational(self.period)
        if p <= 0:
            raise DomainError("period must be positive")
        xs = tuple(as_rational(x) for x in self.offsets)
        if any(x < 0 for x in xs):
            raise DomainError("offsets must be nonnegative")
        object.__setattr__(self, "period", p)
        object.__setattr__(self, "offsets", xs)

    def firing_time(self, u: int, k: int) -> Fraction:
        return self.offsets[u] + self.period * (k - 1)


def schedule_from_coloring(phi: CircularColoring) -> PeriodicSchedule:
    return PeriodicSchedule(phi.perimeter, phi.points)


def marking_from_coloring(d: WeightedSymmetricDigraph, phi: CircularColoring) -> Marking:
    """The vertex with the smaller point holds the token of each edge.

    For ``u < v``: ``T_uv = 0, T_vu = 1`` if ``phi(v) > phi(u)``, otherwise
    ``T_uv = 1, T_vu = 0`` (ties included).
    """
    if not verify_circular_coloring(d, phi):
        raise InvalidColoring(f"not a circular {phi.perimeter}-coloring")
    tokens = {}
    pts = phi.points
    for u, v in d.arcs:
        if u > v:
            continue
        if pts[v] > pts[u]:
            tokens[(u, v)], tokens[(v, u)] = 0, 1
        else:
            tokens[(u, v)], tokens[(v, u)] = 1, 0
    return Marking(tokens)


def coloring_from_schedule(
    s: PeriodicSchedule,
    d: WeightedSymmetricDigraph | None = None,
    marking: Marking | None = None,
) -> CircularColoring:
    """Reduce offsets modulo the period.

    With ``d`` and ``marking`` the schedule is first replayed for
    admissibility and the resulting coloring is verified.
    """
    if d is not None and marking is not None:
        if not is_good_marking(d, marking):
            raise GoodnessViolation("marking is not good")
        if not replay_schedule(d, marking, s.offsets, s.period):
            raise InadmissibleSchedule("schedule fires a vertex with an empty in-arc")
    phi = CircularColoring(s.period, tuple(x % s.period for x in s.offsets))
    if d is not None and not verify_circular_coloring(d, phi):
        raise InvalidColoring("schedule does not reduce to a circular coloring")
    return phi


def periodic_schedule_for_marking(d: WeightedSymmetricDigraph, marking: Marking, period) -> PeriodicSchedule | None:
    """A periodic admissible schedule with the given period, or ``None`` if none exists.

    Offsets are longest-walk potentials under ``c - period*T``; they exist
    exactly when no dicycle becomes positive, i.e. ``period`` is at least the
    maximum cycle ratio.
    """
    p = as_rational(period)
    try:
        pot = longest_walk_potentials(d, parametric_weights(d, marking, p))
    except PositiveCycle:
        return None
    return PeriodicSchedule(p, pot.values)


# ---------------------------------------------------------------------------
# weak circular colorings and tight dicycles
# ---------------------------------------------------------------------------


def verify_weak_circular_coloring(d: WeightedSymmetricDigraph, phi: CircularColoring) -> bool:
    """Equal endpoints are allowed unless a color class holds an all-positive dicycle."""
    _check_vertices(d, phi)
    if phi.perimeter < d.max_pair_weight():
        raise DomainError(f"perimeter {phi.perimeter} below max(c_uv + c_vu) = {d.max_pair_weight()}")
    pts = phi.points
    p = phi.perimeter
    fiber_succ = [[] for _ in range(d.n)]
    for (u, v), c in d.weights.items():
        if pts[u] == pts[v]:
            if c > 0:
                fiber_succ[u].append(v)
        elif circ_dist(pts[u], pts[v], p) < c:
            return False
    # arcs kept above join equal points only, so a dicycle lies inside one fiber
    return not has_dicycle(d.n, fiber_succ)


@dataclass(frozen=True)
class TightnessDigraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    def successors(self) -> list[list[int]]:
        succ = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            succ[u].append(v)
        return succ


def tightness_digraph(d: WeightedSymmetricDigraph, phi: CircularColoring) -> TightnessDigraph:
    """Arcs ``xy`` with ``phi(x) = phi(y), c_xy = 0`` or ``phi(x) != phi(y), d(phi(x), phi(y)) = c_xy``."""
    _check_vertices(d, phi)
    pts = phi.points
    arcs = []
    for (x, y), c in d.weights.items():
        if pts[x] == pts[y]:
            if c == 0:
                arcs.append((x, y))
        elif circ_dist(pts[x], pts[y], phi.perimeter) == c:
            arcs.append((x, y))
    return TightnessDigraph(d.n, tuple(arcs))


def find_tight_dicycle(d: WeightedSymmetricDigraph, phi: CircularColoring) -> tuple[int, ...] | None:
    """Lexicographically smallest dicycle of the tightness digraph, if any."""
    td = tightness_digraph(d, phi)
    return lex_min_dicycle(d.n, td.successors())


@dataclass(frozen=True)
class WeakColoringReport:
    coloring: CircularColoring
    valid: bool
    tight_dicycle: tuple[int, ...] | None


def weak_coloring_from_marking(d: WeightedSymmetricDigraph, marking: Marking, r) -> WeakColoringReport:
    """Longest-walk potentials under ``c - r*T``, reduced mod ``r``.

    Raises :class:`PositiveCycle` when ``r`` is below the marking's maximum
    cycle ratio. A tight dicycle is only guaranteed at ``r = chi_c`` with an
    optimal marking and ``r > max(c_uv + c_vu)``; it is searched for anyway.
    """
    r = as_rational(r)
    if not is_good_marking(d, marking):
        raise GoodnessViolation("marking is not good")
    pot = longest_walk_potentials(d, parametric_weights(d, marking, r))
    phi = CircularColoring(r, tuple(x % r for x in pot.values))
    return WeakColoringReport(phi, verify_weak_circular_coloring(d, phi), find_tight_dicycle(d, phi))


def unit_digraph(g: UndirectedGraph) -> WeightedSymmetricDigraph:
    return to_symmetric_digraph(g, 1)
