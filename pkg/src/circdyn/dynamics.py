"""Synchronous token game on timed marked graphs and sink-reversal dynamics.

Token game conventions. Pulses are numbered ``1, 2, ...``. The state *at*
pulse ``t`` is the configuration after the tokens due at ``t`` have landed
and before anything fires. Stepping fires every fireable vertex at once, then
moves to ``t + 1`` and credits the arrivals due there. With unit weights the
in-flight part of a state is therefore always empty, and the state at pulse
``t`` is exactly the orientation ``omega_{t-1}`` of the matching sink-reversal
run.

Both dynamics report ``transient`` as the number of steps taken before the
first state that later recurs, so the two runs of
:func:`unit_dynamics_equivalence` are directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import CapExceeded, DomainError, GoodnessViolation, InadmissibleSchedule, MultiplicityMismatch
from .graph import (
    AcyclicOrientation,
    Marking,
    UndirectedGraph,
    WeightedSymmetricDigraph,
    as_rational,
    is_good_marking,
    marking_from_orientation,
    to_symmetric_digraph,
)

DEFAULT_STEP_CAP = 1_000_000


# ---------------------------------------------------------------------------
# token game
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TokenGameState:
    """Available tokens and sorted remaining delays of in-flight tokens, per arc.

    Both tuples follow the arc order of the host digraph (``d.arcs``).
    """

    t: int
    available: tuple[int, ...]
    in_flight: tuple[tuple[int, ...], ...]

    def key(self):
        return self.available, self.in_flight

    def tokens(self, arcs: Sequence[tuple[int, int]]) -> dict[tuple[int, int], int]:
        return {a: k for a, k in zip(arcs, self.available)}


class _Net:
    def __init__(self, d: WeightedSymmetricDigraph, delays: dict):
        self.n = d.n
        self.arcs = d.arcs
        index = {a: i for i, a in enumerate(self.arcs)}
        self.in_arcs = [[] for _ in range(d.n)]
        self.out_arcs = [[] for _ in range(d.n)]
        for (u, v), i in index.items():
            self.out_arcs[u].append(i)
            self.in_arcs[v].append(i)
        self.delay = [delays[a] for a in self.arcs]
        for a, c in zip(self.arcs, self.delay):
            if int(c) != c or c < 1:
                raise DomainError(f"token game needs positive integer delays; arc {a} has {c}")


def initial_state(d: WeightedSymmetricDigraph, marking: Marking) -> TokenGameState:
    marking.check_domain(d)
    return TokenGameState(1, tuple(marking[a] for a in d.arcs), tuple(() for _ in d.arcs))


def _step(net: _Net, state: TokenGameState) -> tuple[TokenGameState, frozenset[int]]:
    avail = list(state.available)
    fired = [v for v in range(net.n) if all(avail[i] > 0 for i in net.in_arcs[v])]
    flights = [list(f) for f in state.in_flight]
    for v in fired:
        for i in net.in_arcs[v]:
            avail[i] -= 1
        for i in net.out_arcs[v]:
            flights[i].append(net.delay[i])
    new_flights = []
    for i, f in enumerate(flights):
        rest = []
        for r in f:
            if r == 1:
                avail[i] += 1
            else:
                rest.append(r - 1)
        new_flights.append(tuple(sorted(rest)))
    return TokenGameState(state.t + 1, tuple(avail), tuple(new_flights)), frozenset(fired)


def step_token_game(state: TokenGameState, d: WeightedSymmetricDigraph) -> tuple[TokenGameState, frozenset[int]]:
    """Fire every fireable vertex at pulse ``state.t``; returns the next state and ``h(t)``.

    ``d`` must carry positive integer weights (use :meth:`integer_weights` first).
    """
    return _step(_Net(d, d.weights), state)


@dataclass(frozen=True)
class SteadyState:
    """Periodic regime of a token game.

    ``period`` is measured in pulses of the integer-scaled game; ``scale`` is
    the factor that cleared the weight denominators, so the period in the
    original time unit is ``period / scale``.
    """

    transient: int
    period: int
    multiplicity: int
    firing_counts: tuple[int, ...]
    fired: tuple[frozenset[int], ...]
    scale: int = 1

    @property
    def period_time(self) -> Fraction:
        return Fraction(self.period, self.scale)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.period, self.multiplicity * self.scale)


TraceFn = Callable[[int, frozenset, dict], None]


def default_pulse_cap(d: WeightedSymmetricDigraph) -> int:
    _, cint = d.integer_weights()
    return max(10_000, 10 * sum(cint.values()) * max(1, d.n) ** 2)


def run_to_steady_state(
    d: WeightedSymmetricDigraph,
    marking: Marking,
    pulse_cap: int | None = None,
    trace: TraceFn | None = None,
) -> SteadyState:
    """Play the token game until the full state recurs.

    ``trace(t, fired, tokens)`` is called once per pulse if given.
    """
    if not is_good_marking(d, marking):
        raise GoodnessViolation("initial marking is not good")
    scale, cint = d.integer_weights()
    net = _Net(d, cint)
    cap = pulse_cap if pulse_cap is not None else default_pulse_cap(d)
    state = initial_state(d, marking)
    seen = {state.key(): state.t}
    history: list[frozenset[int]] = []
    while True:
        if state.t > cap:
            raise CapExceeded("pulse_cap", cap, "no recurrence of the token-game state")
        nxt, fired = _step(net, state)
        history.append(fired)
        if trace is not None:
            trace(state.t, fired, state.tokens(d.arcs))
        state = nxt
        first = seen.get(state.key())
        if first is not None:
            break
        seen[state.key()] = state.t
    window = history[first - 1: state.t - 1]
    counts = [0] * d.n
    for fired in window:
        for v in fired:
            counts[v] += 1
    if len(set(counts)) > 1:
        raise MultiplicityMismatch(f"per-vertex firing counts over one period differ: {counts}")
    return SteadyState(
        transient=first - 1,
        period=state.t - first,
        multiplicity=counts[0],
        firing_counts=tuple(counts),
        fired=tuple(history),
        scale=scale,
    )


# ---------------------------------------------------------------------------
# sink reversal
# ---------------------------------------------------------------------------


def sink_reversal_step(omega: AcyclicOrientation) -> AcyclicOrientation:
    """Reverse every edge incident to a sink of ``omega``."""
    sinks = omega.sinks
    arcs = tuple((b, a) if b in sinks else (a, b) for a, b in omega.arcs)
    return AcyclicOrientation(omega.host, arcs, _checked=True)


def _sink_trajectory(host: UndirectedGraph, key: tuple[bool, ...], step_cap: int):
    """Iterate sink reversal on the compact key form until a key repeats.

    Returns ``(keys, sinks, first)``: the keys ``omega_0..omega_{M+p-1}``, their
    sink sets, and ``M``.
    """
    edges = host.edges
    n = host.n
    seen = {}
    keys = []
    sinks = []
    cur = key
    while cur not in seen:
        if len(keys) > step_cap:
            raise CapExceeded("step_cap", step_cap, "no recurrence of the orientation")
        seen[cur] = len(keys)
        keys.append(cur)
        outdeg = [0] * n
        for (u, v), low_to_high in zip(edges, cur):
            outdeg[u if low_to_high else v] += 1
        sink = frozenset(v for v in range(n) if outdeg[v] == 0)
        sinks.append(sink)
        cur = tuple(
            (not lh) if ((v if lh else u) in sink) else lh for (u, v), lh in zip(edges, cur)
        )
    return keys, sinks, seen[cur]


def _orientation_from_key(host: UndirectedGraph, key: tuple[bool, ...]) -> AcyclicOrientation:
    arcs = tuple((u, v) if lh else (v, u) for (u, v), lh in zip(host.edges, key))
    return AcyclicOrientation(host, arcs, _checked=True)


@dataclass(frozen=True)
class SinkSequence:
    """Orientations ``omega_0..omega_{M+p-1}`` generated by sink reversal, and their summary."""

    orientations: tuple[AcyclicOrientation, ...]
    sinks: tuple[frozenset[int], ...]
    transient: int
    period: int
    multiplicity: int

    @property
    def pattern(self) -> tuple[int, ...]:
        """Sink-set sizes over one period."""
        return tuple(len(s) for s in self.sinks[self.transient:])

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.period, self.multiplicity)

    def period_orientations(self) -> tuple[AcyclicOrientation, ...]:
        return self.orientations[self.transient:]


def _multiplicity(n: int, sinks: Sequence[frozenset[int]]) -> int:
    counts = [0] * n
    for s in sinks:
        for v in s:
            counts[v] += 1
    if len(set(counts)) > 1:
        raise MultiplicityMismatch(f"per-vertex sink counts over one period differ: {counts}")
    return counts[0]


def sink_sequence(omega: AcyclicOrientation, step_cap: int = DEFAULT_STEP_CAP) -> SinkSequence:
    host = omega.host
    host.require_connected()
    keys, sinks, first = _sink_trajectory(host, omega.key(), step_cap)
    m = _multiplicity(host.n, sinks[first:])
    return SinkSequence(
        orientations=tuple(_orientation_from_key(host, k) for k in keys),
        sinks=tuple(sinks),
        transient=first,
        period=len(keys) - first,
        multiplicity=m,
    )


def sink_ratio(omega: AcyclicOrientation, step_cap: int = DEFAULT_STEP_CAP) -> Fraction:
    """``p_omega / m_omega`` without materialising the orientation objects."""
    keys, sinks, first = _sink_trajectory(omega.host, omega.key(), step_cap)
    return Fraction(len(keys) - first, _multiplicity(omega.host.n, sinks[first:]))


def unit_dynamics_equivalence(omega: AcyclicOrientation, pulse_cap: int | None = None) -> bool:
    """Sink reversal from ``omega`` and the unit-weight token game agree step for step."""
    seq = sink_sequence(omega)
    d = to_symmetric_digraph(omega.host, 1)
    steady = run_to_steady_state(d, marking_from_orientation(omega), pulse_cap)
    return (
        (seq.transient, seq.period, seq.multiplicity)
        == (steady.transient, steady.period, steady.multiplicity)
        and seq.sinks == steady.fired
    )


# ---------------------------------------------------------------------------
# schedule replay
# ---------------------------------------------------------------------------


def replay_schedule(
    d: WeightedSymmetricDigraph,
    marking: Marking,
    offsets: Sequence,
    period,
    firings: int | None = None,
) -> bool:
    """Check that ``f_u(k) = offsets[u] + period*(k-1)`` is admissible for ``k <= firings``.

    A token emitted at time ``s`` on arc ``uv`` is usable by ``v`` from time
    ``s + c_uv`` on, matching the simulator's arrive-then-fire order.
    """
    marking.check_domain(d)
    p = as_rational(period)
    if p <= 0:
        raise DomainError("period must be positive")
    x = [as_rational(o) for o in offsets]
    if len(x) != d.n:
        raise DomainError("one offset per vertex is required")
    if firings is None:
        firings = 2 * d.n + 4 + max(marking.tokens.values(), default=0)
    for (u, v), c in d.weights.items():
        tokens = marking[(u, v)]
        for k in range(1, firings + 1):
            fire_v = x[v] + p * (k - 1)
            # firings j of u with x_u + p(j-1) + c <= fire_v
            slack = (fire_v - x[u] - c) / p
            arrived = max(0, (slack.numerator // slack.denominator) + 1)
            if tokens + arrived - (k - 1) < 1:
                return False
    return True


def require_admissible(d, marking, offsets, period, firings=None) -> None:
    if not replay_schedule(d, marking, offsets, period, firings):
        raise InadmissibleSchedule("schedule fires a vertex with an empty in-arc")


def sink_ratio_cached(
    omega: AcyclicOrientation, cache: dict, step_cap: int = DEFAULT_STEP_CAP
) -> Fraction:
    """:func:`sink_ratio` sharing work across calls on the same host.

    Every orientation on a trajectory ends in the same period, so the ratio is
    stored for all of them; ``cache`` maps orientation keys to ratios.
    """
    host = omega.host
    edges = host.edges
    n = host.n
    path: list[tuple[bool, ...]] = []
    index: dict[tuple[bool, ...], int] = {}
    sinks: list[frozenset[int]] = []
    cur = omega.key()
    while cur not in cache and cur not in index:
        if len(path) > step_cap:
            raise CapExceeded("step_cap", step_cap, "no recurrence of the orientation")
        index[cur] = len(path)
        path.append(cur)
        outdeg = [0] * n
        for (u, v), lh in zip(edges, cur):
            outdeg[u if lh else v] += 1
        sink = frozenset(v for v in range(n) if outdeg[v] == 0)
        sinks.append(sink)
        cur = tuple((not lh) if ((v if lh else u) in sink) else lh for (u, v), lh in zip(edges, cur))
    if cur in cache:
        ratio = cache[cur]
    else:
        first = index[cur]
        ratio = Fraction(len(path) - first, _multiplicity(n, sinks[first:]))
    for k in path:
        cache[k] = ratio
    return ratio
