from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from circdyn.bounds import (
    BoundReport,
    BoundsConfig,
    all_maximum_independent_sets,
    alpha_t,
    best_lower_bound,
    bound_alpha1_1,
    bound_alphat,
    bound_d1,
    bound_d2,
    bound_new,
    chromatic_number,
    clique_number,
    independence_number,
    is_bipartite,
    is_k_colorable,
)
from circdyn.catalog import complete, cycle, odd_wheel, path, petersen, petersen_line
from circdyn.circular import chi_c_exact_kd
from circdyn.errors import CapExceeded, DomainError
from circdyn.graph import UndirectedGraph

from helpers import connected_graphs, random_connected


def _colorable_brute(g: UndirectedGraph, vertices, k: int) -> bool:
    vs = list(vertices)
    for assign in product(range(k), repeat=len(vs)):
        col = dict(zip(vs, assign))
        if all(col[u] != col[v] for u, v in g.edges if u in col and v in col):
            return True
    return not vs


def _alpha_t_brute(g: UndirectedGraph, t: int) -> int:
    for size in range(g.n, -1, -1):
        for s in combinations(range(g.n), size):
            if _colorable_brute(g, s, t):
                return size
    return 0


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def test_coloring_numbers_match_brute_force(seed):
    rng = random.Random(seed)
    g = random_connected(rng, rng.randint(2, 7))
    chi = chromatic_number(g)
    assert _colorable_brute(g, range(g.n), chi)
    assert chi == 1 or not _colorable_brute(g, range(g.n), chi - 1)
    cols = is_k_colorable(g, chi)
    assert cols is not None and all(cols[u] != cols[v] for u, v in g.edges)
    assert independence_number(g) == _alpha_t_brute(g, 1)
    assert alpha_t(g, 2) == _alpha_t_brute(g, 2)
    assert is_bipartite(g) == (chi <= 2)
    assert clique_number(g) <= chi


def test_edge_cases():
    assert chromatic_number(UndirectedGraph(0, ())) == 0
    assert chromatic_number(UndirectedGraph(3, ())) == 1
    assert independence_number(UndirectedGraph(0, ())) == 0
    assert alpha_t(petersen(), 3) == 10
    with pytest.raises(CapExceeded):
        alpha_t(petersen_line(), 2, cap=3)


def test_maximum_independent_sets():
    sets = all_maximum_independent_sets(cycle(5))
    assert len(sets) == 5 and all(len(s) == 2 for s in sets)
    # the five vertices of the Petersen line graph's perfect matchings
    assert len(all_maximum_independent_sets(petersen_line())) == 6
    with pytest.raises(CapExceeded):
        all_maximum_independent_sets(UndirectedGraph(30, ()), cap=10)


def test_d1_on_complete_graph():
    rep = bound_d1(complete(4))
    assert rep.applicable and rep.value == 4
    assert rep.hypothesis_log[0].witness["chi"] == 3


def test_d2_on_petersen_is_not_applicable():
    # every second neighbourhood of the Petersen graph is a 6-cycle
    rep = bound_d2(petersen())
    assert not rep.applicable and rep.value is None
    wit = rep.hypothesis_log[0].witness
    assert wit["vertex"] == 0 and wit["neighborhood"] == [2, 3, 6, 7, 8, 9] and wit["chi"] == 2


def test_alphat_requires_neighbourhood_condition():
    rep = bound_alphat(cycle(5), 3)
    assert not rep.applicable
    assert bound_alphat(cycle(5), 1).value == Fraction(5, 2)
    assert bound_alphat(cycle(5), 2).value == Fraction(5, 2)


def test_new_bound():
    g, rep = bound_new(cycle(5), [complete(2)] * 5)
    assert g.n == 16 and rep.applicable and rep.value == 4 and rep.bound_name == "new[t=2]"
    _, rep = bound_new(cycle(4), [complete(1)] * 4)
    assert not rep.applicable
    _, rep = bound_new(cycle(5), [complete(1)] * 4 + [complete(2)])
    assert not rep.applicable
    with pytest.raises(DomainError):
        bound_new(cycle(5), [complete(1)])


def test_alpha1_1_rejects_bad_t():
    with pytest.raises(DomainError):
        bound_alpha1_1(cycle(5), 0)


def test_report_round_trip():
    reports, best = best_lower_bound(petersen_line(), BoundsConfig(extra_t=(4,)))
    assert best == Fraction(60, 17)
    for r in reports:
        again = BoundReport.from_dict(json.loads(json.dumps(r.to_dict())))
        assert again == r
    assert [r.bound_name for r in reports] == sorted(r.bound_name for r in reports)


def _sound(g: UndirectedGraph) -> None:
    exact, _ = chi_c_exact_kd(g)
    reports, best = best_lower_bound(g)
    for r in reports:
        if r.applicable:
            assert r.value <= exact, (r.bound_name, r.value, exact, g.edges)
    assert best <= exact


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_bounds_are_sound_on_all_small_graphs(n):
    for g in connected_graphs(n, n):
        _sound(g)


@given(st.integers(0, 100_000))
@settings(max_examples=30, deadline=None)
def test_bounds_are_sound_on_random_graphs(seed):
    rng = random.Random(seed)
    _sound(random_connected(rng, rng.randint(6, 8)))


@pytest.mark.parametrize("g", [cycle(7), odd_wheel(3), path(3), complete(5)], ids=["C7", "W7", "P3", "K5"])
def test_bounds_are_sound_on_named_graphs(g):
    _sound(g)
