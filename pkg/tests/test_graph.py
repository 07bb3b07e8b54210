from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circdyn.errors import DomainError, NotAcyclic
from circdyn.graph import (
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
    line_graph,
    marking_from_orientation,
    neighborhood,
    neighborhood_of_set,
    orientation_from_marking,
    random_acyclic_orientation,
    to_symmetric_digraph,
)
from circdyn.errors import CapExceeded
from circdyn import catalog

from connected_graphs import CONNECTED
from helpers import acyclic_orientation_count, connected_graphs


def test_frozen_list_counts():
    # number of connected graphs on n unlabelled vertices
    assert {n: len(v) for n, v in CONNECTED.items()} == {2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def test_edges_are_normalised():
    g = UndirectedGraph(3, ((2, 0), (1, 2)))
    assert g.edges == ((0, 2), (1, 2))
    assert g.neighbors(2) == {0, 1}
    assert g.degree(0) == 1


@pytest.mark.parametrize(
    "n, edges",
    [(-1, ()), (2, ((0, 0),)), (2, ((0, 1), (1, 0))), (2, ((0, 2),))],
)
def test_bad_graphs_rejected(n, edges):
    with pytest.raises(DomainError):
        UndirectedGraph(n, edges)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("3/4") == Fraction(3, 4)


def test_induced_and_neighborhoods():
    g = catalog.petersen()
    h, keep = g.induced([0, 1, 2, 3, 4])
    assert keep == (0, 1, 2, 3, 4) and h.m == 5
    assert neighborhood(g, 0, 0) == {0}
    assert neighborhood(g, 0, 1) == {1, 4, 5}
    assert len(neighborhood(g, 0, 2)) == 6
    assert neighborhood_of_set(g, {0, 1}) == {2, 4, 5, 6}


def test_line_graph_of_triangle_and_star():
    assert line_graph(catalog.cycle(3)).m == 3
    star = UndirectedGraph(4, ((0, 1), (0, 2), (0, 3)))
    assert line_graph(star).m == 3
    assert line_graph(catalog.petersen()).n == 15


def test_symmetric_digraph_validation():
    with pytest.raises(DomainError):
        WeightedSymmetricDigraph(2, {(0, 1): 1})
    with pytest.raises(DomainError):
        WeightedSymmetricDigraph(2, {(0, 1): 0, (1, 0): 0})
    with pytest.raises(DomainError):
        WeightedSymmetricDigraph(2, {(0, 1): -1, (1, 0): 2})
    d = WeightedSymmetricDigraph(2, {(0, 1): 0, (1, 0): Fraction(3, 2)})
    assert d.max_pair_weight() == Fraction(3, 2)
    assert d.integer_weights() == (2, {(0, 1): 0, (1, 0): 3})


def test_marking_domain():
    with pytest.raises(DomainError):
        Marking({(0, 1): -1})
    d = to_symmetric_digraph(catalog.path(2))
    with pytest.raises(DomainError):
        Marking({(0, 1): 1}).check_domain(d)


def test_good_marking_checks():
    g = catalog.cycle(3)
    d = to_symmetric_digraph(g)
    cyclic = Marking({(0, 1): 1, (1, 2): 1, (2, 0): 1, (1, 0): 0, (2, 1): 0, (0, 2): 0})
    assert not is_good_marking(d, cyclic)
    two = Marking({(0, 1): 1, (1, 0): 1, (1, 2): 1, (2, 1): 0, (2, 0): 1, (0, 2): 0})
    assert not is_good_marking(d, two)
    with pytest.raises(NotAcyclic):
        orientation_from_marking(g, cyclic)


def test_orientation_validation():
    g = catalog.cycle(3)
    with pytest.raises(NotAcyclic):
        AcyclicOrientation.from_arcs(g, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(DomainError):
        AcyclicOrientation.from_arcs(g, [(0, 1), (1, 2)])
    with pytest.raises(DomainError):
        AcyclicOrientation.from_arcs(g, [(0, 1), (1, 2), (0, 2), (2, 0)])
    w = AcyclicOrientation.from_arcs(g, [(0, 1), (2, 1), (0, 2)])
    assert w.sinks == {1} and w.sources == {0}


@pytest.mark.parametrize("g", list(connected_graphs(5)), ids=lambda g: str(g.edges))
def test_orientation_count_matches_chromatic_polynomial(g):
    orients = list(acyclic_orientations(g))
    assert len(orients) == acyclic_orientation_count(g)
    assert len({o.key() for o in orients}) == len(orients)


def test_orientation_count_petersen():
    g = catalog.petersen()
    assert sum(1 for _ in acyclic_orientations(g)) == acyclic_orientation_count(g)


def test_orientation_cap():
    with pytest.raises(CapExceeded) as exc:
        list(acyclic_orientations(catalog.complete(5), cap=10))
    assert exc.value.exit_code == 3
    assert "orientation_cap" in str(exc.value)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_marking_orientation_bijection(seed):
    rng = random.Random(seed)
    g = catalog.petersen() if seed % 2 else catalog.odd_wheel(2)
    omega = random_acyclic_orientation(g, rng)
    t = marking_from_orientation(omega)
    assert is_good_marking(to_symmetric_digraph(g), t)
    assert orientation_from_marking(g, t) == omega
    # fireable vertices are exactly the sinks
    fireable = {v for v in range(g.n) if all(t[(u, v)] == 1 for u in g.neighbors(v))}
    assert fireable == omega.sinks


def test_lex_min_dicycle():
    succ = [[1, 2], [2], [0, 1], []]
    assert has_dicycle(4, succ)
    assert lex_min_dicycle(4, succ) == (0, 1, 2)
    assert lex_min_dicycle(3, [[1], [2], []]) is None
    assert lex_min_dicycle(3, [[], [2], [1]]) == (1, 2)


def test_colorings_validate():
    with pytest.raises(DomainError):
        CircularColoring(Fraction(5, 2), (Fraction(5, 2),))
    with pytest.raises(DomainError):
        KdColoring(3, 2, (0, 1))
    with pytest.raises(DomainError):
        KdColoring(5, 2, (0, 5))
    phi = CircularColoring(5, (0, 2, 4)).rescaled(Fraction(5, 2))
    assert phi.points == (0, 1, 2)
    assert KdColoring(5, 2, (0, 2)).ratio == Fraction(5, 2)
