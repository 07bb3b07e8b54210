"""Exact classical invariants and lower bounds on the circular chromatic number.

Every bound returns a :class:`BoundReport` whose hypothesis log carries a
concrete witness for each checked property, or a counterexample when the
property fails. Nothing here is heuristic: all solvers are exact and
deterministic, and they raise :class:`CapExceeded` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Sequence

from .catalog import compose_new
from .errors import CapExceeded, DomainError
from .graph import UndirectedGraph, neighborhood, neighborhood_of_set

MIS_CAP = 24
ALPHA_T_CAP = 20


# ---------------------------------------------------------------------------
# chromatic number
# ---------------------------------------------------------------------------


def _masks(g: UndirectedGraph) -> list[int]:
    out = [0] * g.n
    for u, v in g.edges:
        out[u] |= 1 << v
        out[v] |= 1 << u
    return out


def is_k_colorable(g: UndirectedGraph, k: int) -> list[int] | None:
    """A proper coloring with colors ``0..k-1`` or ``None``.

    Vertices are colored in order of descending degree; a vertex may open at
    most one new color, which removes color-permutation symmetry.
    """
    if g.n == 0:
        return []
    if k <= 0:
        return None
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colors = [-1] * g.n
    adj = g.adjacency

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[w] for w in adj[v]}
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            colors[v] = c
            if rec(i + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return list(colors) if rec(0, 0) else None


def _greedy_colors(g: UndirectedGraph) -> int:
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colors: dict[int, int] = {}
    for v in order:
        taken = {colors[w] for w in g.adjacency[v] if w in colors}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return max(colors.values(), default=-1) + 1


def clique_number(g: UndirectedGraph) -> int:
    adj = _masks(g)
    best = 0

    def rec(size: int, cand: int):
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = size
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            rec(size + 1, cand & adj[v])

    rec(0, (1 << g.n) - 1)
    return best


@lru_cache(maxsize=4096)
def chromatic_number(g: UndirectedGraph) -> int:
    """Exact chromatic number; 0 for the empty graph, 1 for an edgeless one."""
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    lower = clique_number(g)
    upper = _greedy_colors(g)
    for k in range(lower, upper):
        if is_k_colorable(g, k) is not None:
            return k
    return upper


def chromatic_number_of(g: UndirectedGraph, vertices) -> int:
    sub, _ = g.induced(vertices)
    return chromatic_number(sub)


def is_bipartite(g: UndirectedGraph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
    return True


# ---------------------------------------------------------------------------
# independent sets and alpha_t
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def independence_number(g: UndirectedGraph) -> int:
    adj = _masks(g)
    memo: dict[int, int] = {}

    def mis(mask: int) -> int:
        if not mask:
            return 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        # some vertex of N[v] lies in every maximal independent set
        best_v, best_deg = -1, None
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            deg = bin(adj[v] & mask).count("1")
            if best_deg is None or deg < best_deg:
                best_v, best_deg = v, deg
        closed = (adj[best_v] & mask) | (1 << best_v)
        res = 0
        m = closed
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            res = max(res, 1 + mis(mask & ~(adj[w] | (1 << w))))
        memo[mask] = res
        return res

    return mis((1 << g.n) - 1)


def all_maximum_independent_sets(g: UndirectedGraph, cap: int = MIS_CAP) -> list[tuple[int, ...]]:
    """Every independent set of size ``alpha(g)``, sorted lexicographically."""
    if g.n > cap:
        raise CapExceeded("mis_cap", cap, f"graph has {g.n} vertices")
    alpha = independence_number(g)
    adj = _masks(g)
    found = []

    def rec(start: int, chosen: list[int], cand: int):
        if len(chosen) == alpha:
            found.append(tuple(chosen))
            return
        for v in range(start, g.n):
            if not (cand >> v) & 1:
                continue
            if len(chosen) + bin(cand >> v).count("1") < alpha:
                return
            chosen.append(v)
            rec(v + 1, chosen, cand & ~adj[v] & ~((1 << (v + 1)) - 1))
            chosen.pop()

    rec(0, [], (1 << g.n) - 1)
    return found


def _is_t_colorable(g: UndirectedGraph, t: int) -> bool:
    if t == 1:
        return g.m == 0
    if t == 2:
        return is_bipartite(g)
    return is_k_colorable(g, t) is not None


@lru_cache(maxsize=1024)
def alpha_t(g: UndirectedGraph, t: int, cap: int = ALPHA_T_CAP) -> int:
    """Largest number of vertices inducing a ``t``-colorable subgraph.

    Searches removal sets of increasing size, so the first hit is optimal.
    """
    if t < 1:
        raise DomainError("t must be a positive integer")
    if g.n > cap:
        raise CapExceeded("alpha_t_cap", cap, f"graph has {g.n} vertices")
    if t == 1:
        return independence_number(g)
    if t >= chromatic_number(g):
        return g.n
    everything = set(range(g.n))
    for k in range(1, g.n + 1):
        for removed in combinations(range(g.n), k):
            sub, _ = g.induced(everything.difference(removed))
            if _is_t_colorable(sub, t):
                return g.n - k
    return 0  # pragma: no cover - removing every vertex always succeeds


# ---------------------------------------------------------------------------
# bound reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    property: str
    holds: bool
    witness: Any


@dataclass
class BoundReport:
    bound_name: str
    applicable: bool
    hypothesis_log: list[Hypothesis] = field(default_factory=list)
    value: Fraction | None = None

    def to_dict(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "applicable": self.applicable,
            "value": None if self.value is None else _frac_str(self.value),
            "hypothesis_log": [
                {"property": h.property, "holds": h.holds, "witness": h.witness} for h in self.hypothesis_log
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> BoundReport:
        return cls(
            bound_name=data["bound_name"],
            applicable=data["applicable"],
            hypothesis_log=[Hypothesis(h["property"], h["holds"], h["witness"]) for h in data["hypothesis_log"]],
            value=None if data["value"] is None else Fraction(data["value"]),
        )


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _finish(name: str, log: list[Hypothesis], value: Fraction) -> BoundReport:
    ok = all(h.holds for h in log)
    return BoundReport(name, ok, log, value if ok else None)


def _neighborhood_chis(g: UndirectedGraph, k: int = 1) -> list[tuple[int, int, tuple[int, ...]]]:
    """``(chi(N_k(u)), u, N_k(u))`` for every vertex."""
    out = []
    for u in range(g.n):
        nb = tuple(sorted(neighborhood(g, u, k)))
        out.append((chromatic_number_of(g, nb), u, nb))
    return out


def bound_d1(g: UndirectedGraph) -> BoundReport:
    """``chi_c >= chi(N_1(u)) + 1`` at the best vertex ``u``."""
    g.require_connected()
    chi, u, nb = max(_neighborhood_chis(g), key=lambda x: (x[0], -x[1]))
    log = [Hypothesis("max over u of chi(N1(u))", True, {"vertex": u, "neighborhood": list(nb), "chi": chi})]
    return _finish("d1", log, Fraction(chi + 1))


def bound_alphat(g: UndirectedGraph, t: int, cap: int = ALPHA_T_CAP) -> BoundReport:
    """``chi_c >= t|V|/alpha_t`` when every ``chi(N_1(u)) >= t-1``."""
    g.require_connected()
    chi, u, nb = min(_neighborhood_chis(g), key=lambda x: (x[0], x[1]))
    log = [
        Hypothesis(
            f"every u has chi(N1(u)) >= {t - 1}",
            chi >= t - 1,
            {"vertex": u, "neighborhood": list(nb), "chi": chi, "role": "minimum"},
        )
    ]
    at = alpha_t(g, t, cap)
    log.append(Hypothesis(f"alpha_{t} computed", True, {"alpha_t": at}))
    return _finish(f"alphat[t={t}]", log, Fraction(t * g.n, at))


def bound_new(h: UndirectedGraph, parts: Sequence[UndirectedGraph]) -> tuple[UndirectedGraph, BoundReport]:
    """Build the apex composition of ``h`` with ``parts`` and report the ``t+2`` bound."""
    if len(parts) != h.n:
        raise DomainError(f"need exactly {h.n} parts, got {len(parts)}")
    g = compose_new(h, parts)
    chis = [chromatic_number(p) for p in parts]
    t = chis[0] if chis else 0
    same = len(set(chis)) <= 1 and t >= 1
    log = [Hypothesis("all parts are t-chromatic for one t", same, {"part_chis": chis})]
    chi_h = chromatic_number(h)
    log.append(Hypothesis("chi(H) >= 3", chi_h >= 3, {"chi_H": chi_h}))
    return g, _finish(f"new[t={t}]", log, Fraction(t + 2))


def bound_d2(g: UndirectedGraph) -> BoundReport:
    """``chi_c >= 3`` when some ``N_2(u)`` is not bipartite."""
    g.require_connected()
    chi, u, nb = max(_neighborhood_chis(g, 2), key=lambda x: (x[0], -x[1]))
    log = [
        Hypothesis(
            "some u has chi(N2(u)) >= 3",
            chi >= 3,
            {"vertex": u, "neighborhood": list(nb), "chi": chi, "role": "maximum"},
        )
    ]
    return _finish("d2", log, Fraction(3))


def _pair_neighborhood_check(g: UndirectedGraph, need: int):
    """First nonadjacent pair whose joint open neighbourhood has chi < need, else the tightest pair."""
    worst = None
    pairs = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            pairs += 1
            nb = tuple(sorted(neighborhood_of_set(g, (u, v))))
            chi = chromatic_number_of(g, nb)
            if chi < need:
                return False, {"pair": [u, v], "neighborhood": list(nb), "chi": chi}
            if worst is None or chi < worst["chi"]:
                worst = {"pair": [u, v], "neighborhood": list(nb), "chi": chi}
    return True, {"pairs_checked": pairs, "tightest": worst}


def bound_alpha2(g: UndirectedGraph, cap: int = ALPHA_T_CAP) -> BoundReport:
    """``chi_c >= |V| / (alpha - 2/3)`` under hypotheses P1-P4."""
    g.require_connected()
    n = g.n
    a1 = independence_number(g)
    log = []
    ok, wit = _pair_neighborhood_check(g, 2)
    log.append(Hypothesis("P1: chi(N1(u,v)) >= 2 for nonadjacent u,v", ok, wit))
    log.append(Hypothesis("P2: |V| <= 3*alpha1 - 3", n <= 3 * a1 - 3, {"n": n, "alpha1": a1}))
    a2 = alpha_t(g, 2, cap)
    log.append(Hypothesis("P3: alpha2 < 2*alpha1", a2 < 2 * a1, {"alpha2": a2, "alpha1": a1}))
    chi = chromatic_number(g)
    log.append(Hypothesis("P4: chi >= 3", chi >= 3, {"chi": chi}))
    value = Fraction(3 * n, 3 * a1 - 2) if 3 * a1 > 2 else Fraction(0)
    return _finish("alpha2", log, value)


def bound_alpha1_1(g: UndirectedGraph, t: int, cap: int = MIS_CAP) -> BoundReport:
    """``chi_c >= |V| / (alpha - (t-1)/t)`` under hypotheses P1-P5."""
    g.require_connected()
    if t < 1:
        raise DomainError("t must be a positive integer")
    n = g.n
    a1 = independence_number(g)
    log = []

    chi1, u, nb = min(_neighborhood_chis(g), key=lambda x: (x[0], x[1]))
    log.append(
        Hypothesis(
            f"P1: chi(N1(v)) >= {t - 2} for every v",
            chi1 >= t - 2,
            {"vertex": u, "neighborhood": list(nb), "chi": chi1, "role": "minimum"},
        )
    )

    mis = all_maximum_independent_sets(g, cap)
    p2 = True
    p2_wit: dict = {}
    worst = None
    for s in mis:
        nbs = tuple(sorted(neighborhood_of_set(g, s)))
        chi = chromatic_number_of(g, nbs)
        if chi < t - 1:
            p2 = False
            p2_wit = {"independent_set": list(s), "neighborhood": list(nbs), "chi": chi}
            break
        if worst is None or chi < worst["chi"]:
            worst = {"independent_set": list(s), "neighborhood": list(nbs), "chi": chi}
    if p2:
        p2_wit = {"sets_checked": len(mis), "tightest": worst}
    log.append(Hypothesis(f"P2: chi(N1(I)) >= {t - 1} for every maximum independent set I", p2, p2_wit))

    log.append(Hypothesis(f"P3: |V| <= {t}*alpha1 - {t}", n <= t * a1 - t, {"n": n, "alpha1": a1}))

    p4 = True
    p4_wit: dict = {"sets": [list(s) for s in mis], "pairs_checked": 0}
    for s1, s2 in combinations(mis, 2):
        common = sorted(set(s1) & set(s2))
        p4_wit["pairs_checked"] += 1
        if len(common) != 1:
            p4 = False
            p4_wit = {"pair": [list(s1), list(s2)], "intersection": common}
            break
    log.append(Hypothesis("P4: distinct maximum independent sets meet in exactly one vertex", p4, p4_wit))

    chi = chromatic_number(g)
    log.append(Hypothesis(f"P5: chi >= {t}", chi >= t, {"chi": chi}))
    denom = t * a1 - (t - 1)
    value = Fraction(n * t, denom) if denom > 0 else Fraction(0)
    return _finish(f"alpha1-1[t={t}]", log, value)


@dataclass(frozen=True)
class BoundsConfig:
    alpha_t_cap: int = ALPHA_T_CAP
    mis_cap: int = MIS_CAP
    extra_t: tuple[int, ...] = ()


def best_lower_bound(g: UndirectedGraph, config: BoundsConfig | None = None) -> tuple[list[BoundReport], Fraction]:
    """Run every bound that makes sense for ``g``; returns the reports (sorted by name) and the best value.

    ``alphat`` runs for ``t = 1..chi(g)`` (``t = 1`` is the plain ``|V|/alpha``
    bound) and ``alpha1-1`` for ``t = 2..chi(g)``; ``config.extra_t`` adds more.
    """
    config = config or BoundsConfig()
    g.require_connected()
    chi = chromatic_number(g)
    ts = sorted(set(range(1, chi + 1)) | {t for t in config.extra_t if t >= 1})
    reports = [bound_d1(g), bound_d2(g), bound_alpha2(g, config.alpha_t_cap)]
    reports += [bound_alphat(g, t, config.alpha_t_cap) for t in ts]
    reports += [bound_alpha1_1(g, t, config.mis_cap) for t in ts if t >= 2]
    reports.sort(key=lambda r: r.bound_name)
    best = max((r.value for r in reports if r.applicable), default=Fraction(0))
    return reports, best
