from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circdyn.catalog import complete, cycle, g_family, path, petersen
from circdyn.circular import periodic_schedule_for_marking
from circdyn.dynamics import (
    initial_state,
    replay_schedule,
    require_admissible,
    run_to_steady_state,
    sink_ratio,
    sink_ratio_cached,
    sink_reversal_step,
    sink_sequence,
    step_token_game,
    unit_dynamics_equivalence,
)
from circdyn.errors import CapExceeded, DomainError, GoodnessViolation, InadmissibleSchedule
from circdyn.graph import (
    AcyclicOrientation,
    Marking,
    WeightedSymmetricDigraph,
    acyclic_orientations,
    marking_from_orientation,
    random_acyclic_orientation,
    to_symmetric_digraph,
)
from circdyn.ratio import max_cycle_ratio

from helpers import connected_graphs, random_connected, random_good_marking, random_weights


def test_single_edge_alternates():
    d = to_symmetric_digraph(path(2))
    t = Marking({(0, 1): 1, (1, 0): 0})
    s = run_to_steady_state(d, t)
    assert (s.transient, s.period, s.multiplicity) == (0, 2, 1)
    assert s.fired[:2] == (frozenset({1}), frozenset({0}))
    assert s.ratio == 2


def test_step_token_game_delays():
    d = WeightedSymmetricDigraph(2, {(0, 1): 3, (1, 0): 1})
    state = initial_state(d, Marking({(0, 1): 0, (1, 0): 1}))
    state, fired = step_token_game(state, d)
    assert fired == {0}
    assert state.available == (0, 0) and state.in_flight == ((2,), ())
    state, fired = step_token_game(state, d)
    state, fired = step_token_game(state, d)
    assert fired == frozenset()
    assert state.t == 4 and state.available == (1, 0)
    s = run_to_steady_state(d, Marking({(0, 1): 0, (1, 0): 1}))
    assert s.period == 4 and s.multiplicity == 1


def test_rational_weights_are_rescaled():
    d = WeightedSymmetricDigraph(2, {(0, 1): Fraction(1, 2), (1, 0): Fraction(1, 3)})
    s = run_to_steady_state(d, Marking({(0, 1): 1, (1, 0): 0}))
    assert s.scale == 6
    assert s.period_time == Fraction(5, 6) and s.ratio == Fraction(5, 6)


def test_goodness_violation():
    d = to_symmetric_digraph(cycle(3))
    bad = Marking({(0, 1): 1, (1, 2): 1, (2, 0): 1, (1, 0): 0, (2, 1): 0, (0, 2): 0})
    with pytest.raises(GoodnessViolation) as exc:
        run_to_steady_state(d, bad)
    assert exc.value.exit_code == 2


def test_zero_weight_rejected_by_simulator():
    d = WeightedSymmetricDigraph(2, {(0, 1): 0, (1, 0): 1})
    with pytest.raises(DomainError):
        run_to_steady_state(d, Marking({(0, 1): 1, (1, 0): 0}))


def test_pulse_cap():
    d = random_weights(random.Random(3), petersen())
    t = random_good_marking(random.Random(4), petersen())
    with pytest.raises(CapExceeded) as exc:
        run_to_steady_state(d, t, pulse_cap=3)
    assert exc.value.exit_code == 3 and "pulse_cap" in str(exc.value)


def test_step_cap():
    omega = random_acyclic_orientation(petersen(), random.Random(0))
    with pytest.raises(CapExceeded):
        sink_sequence(omega, step_cap=1)


def test_trace_is_called_every_pulse():
    d = to_symmetric_digraph(cycle(5))
    t = random_good_marking(random.Random(0), cycle(5))
    rows = []
    s = run_to_steady_state(d, t, trace=lambda pulse, fired, tokens: rows.append((pulse, fired, tokens)))
    assert [r[0] for r in rows] == list(range(1, len(s.fired) + 1))
    assert rows[0][2] == t.tokens


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def test_tokens_conserved_per_edge(seed):
    rng = random.Random(seed)
    g = random_connected(rng, rng.randint(2, 6))
    d = random_weights(rng, g)
    state = initial_state(d, random_good_marking(rng, g))
    idx = {a: i for i, a in enumerate(d.arcs)}
    for _ in range(30):
        state, _ = step_token_game(state, d)
        for u, v in g.edges:
            i, j = idx[(u, v)], idx[(v, u)]
            total = state.available[i] + state.available[j] + len(state.in_flight[i]) + len(state.in_flight[j])
            assert total == 1


@given(st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_steady_ratio_equals_cycle_ratio(seed):
    rng = random.Random(seed)
    g = random_connected(rng, rng.randint(2, 7))
    d = random_weights(rng, g)
    if seed % 4 == 0:
        d = d.scaled(Fraction(1, rng.randint(2, 5)))
    t = random_good_marking(rng, g)
    assert run_to_steady_state(d, t).ratio == max_cycle_ratio(d, t).ratio


@pytest.mark.parametrize("g", list(connected_graphs(5)), ids=lambda g: str(g.edges))
def test_sink_reversal_matches_unit_token_game(g):
    for omega in acyclic_orientations(g):
        assert unit_dynamics_equivalence(omega)


def test_sink_reversal_step_reverses_sinks_only():
    g = cycle(5)
    omega = AcyclicOrientation.from_arcs(g, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 0)])
    nxt = sink_reversal_step(omega)
    assert nxt.sinks == {0, 2}
    assert set(nxt.arcs) == {(1, 0), (1, 2), (3, 2), (3, 4), (4, 0)}


def test_sink_sequence_summary():
    seq = sink_sequence(AcyclicOrientation.from_arcs(path(2), [(0, 1)]))
    assert (seq.transient, seq.period, seq.multiplicity) == (0, 2, 1)
    assert seq.pattern == (1, 1)
    g = complete(4)
    seq = sink_sequence(AcyclicOrientation.from_order(g, [0, 1, 2, 3]))
    assert seq.period == 4 and seq.multiplicity == 1 and seq.pattern == (1, 1, 1, 1)
    assert len(seq.period_orientations()) == 4


def test_cached_ratio_agrees():
    g = g_family(1)
    cache: dict = {}
    for omega in acyclic_orientations(g):
        assert sink_ratio_cached(omega, cache) == sink_ratio(omega)


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def test_schedule_from_potentials_is_admissible(seed):
    rng = random.Random(seed)
    g = random_connected(rng, rng.randint(2, 6))
    d = random_weights(rng, g)
    t = random_good_marking(rng, g)
    rho = max_cycle_ratio(d, t).ratio
    s = periodic_schedule_for_marking(d, t, rho)
    assert s is not None
    assert replay_schedule(d, t, s.offsets, s.period)
    require_admissible(d, t, s.offsets, s.period + 1)
    assert periodic_schedule_for_marking(d, t, rho - Fraction(1, 100)) is None


def test_inadmissible_schedule():
    d = to_symmetric_digraph(path(2))
    t = marking_from_orientation(AcyclicOrientation.from_arcs(path(2), [(0, 1)]))
    # vertex 0 must wait for vertex 1 to fire; equal offsets break that
    assert not replay_schedule(d, t, [0, 0], 2)
    with pytest.raises(InadmissibleSchedule):
        require_admissible(d, t, [0, 0], 2)
    assert replay_schedule(d, t, [1, 0], 2)
