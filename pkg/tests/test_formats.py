from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circdyn.catalog import cycle, petersen
from circdyn.errors import NotAcyclic, ParseError
from circdyn.formats import (
    coloring_to_dot,
    format_col,
    format_kd,
    format_orientation_spec,
    format_tmg,
    format_ug,
    frac_str,
    graph_to_dot,
    orientation_to_dot,
    parse_col,
    parse_coloring_file,
    parse_kd,
    parse_orientation_spec,
    parse_tmg,
    parse_ug,
    read_text,
)
from circdyn.graph import CircularColoring, KdColoring, random_acyclic_orientation

from helpers import random_connected, random_good_marking, random_weights


def test_frac_str():
    assert frac_str(Fraction(11, 3)) == "11/3"
    assert frac_str(Fraction(6, 2)) == "3"
    assert frac_str(0) == "0"


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_ug_and_tmg_roundtrip(seed):
    rng = random.Random(seed)
    g = random_connected(rng, rng.randint(2, 7))
    assert parse_ug(format_ug(g)) == g
    d = random_weights(rng, g)
    if seed % 3 == 0:
        d = d.scaled(Fraction(1, 3))
    t = random_good_marking(rng, g)
    d2, t2 = parse_tmg(format_tmg(d, t))
    assert d2 == d and t2 == t


def test_coloring_roundtrip():
    phi = CircularColoring(Fraction(5, 2), (0, 1, 2, Fraction(1, 2), Fraction(3, 2)))
    assert parse_col(format_col(phi)) == phi
    f = KdColoring(5, 2, (0, 2, 4, 1, 3))
    assert parse_kd(format_kd(f)) == f
    assert parse_coloring_file(format_kd(f)) == f
    assert parse_coloring_file(format_col(phi)) == phi


def test_comments_and_blank_lines():
    g = parse_ug("# a triangle\n\nn 3\ne 0 1  # first\ne 1 2\ne 0 2\n")
    assert g == cycle(3)


@pytest.mark.parametrize(
    "text",
    ["", "e 0 1\n", "n x\n", "n 2\ne 0\n", "n 2\ne 0 5\n", "n 2\nf 0 1\n", "n 2\ne 0 1\ne 1 0\n"],
)
def test_bad_ug(text):
    with pytest.raises(ParseError) as exc:
        parse_ug(text)
    assert exc.value.exit_code == 1


@pytest.mark.parametrize(
    "text",
    ["n 2\na 0 1 1 1\n", "n 2\na 0 1 1 1\na 0 1 1 0\n", "n 2\na 0 1 x 1\na 1 0 1 0\n", "n 2\na 0 1 1 -1\na 1 0 1 1\n"],
)
def test_bad_tmg(text):
    with pytest.raises(ParseError):
        parse_tmg(text)


def test_bad_colorings():
    with pytest.raises(ParseError):
        parse_col("p 3\nc 0 0\nc 2 1\n")
    with pytest.raises(ParseError):
        parse_col("p 3\nc 0 4\n")
    with pytest.raises(ParseError):
        parse_kd("kd 3 2\nc 0 0\n")
    with pytest.raises(ParseError):
        parse_coloring_file("# nothing\n")


def test_read_text_missing(tmp_path):
    with pytest.raises(ParseError):
        read_text(tmp_path / "missing.ug")


def test_orientation_spec():
    g = cycle(5)
    omega = parse_orientation_spec(g, "0>1,2>1,2>3,4>3,4>0")
    assert omega.sinks == {1, 3}
    assert parse_orientation_spec(g, format_orientation_spec(omega)) == omega
    with pytest.raises(ParseError):
        parse_orientation_spec(g, "0>1,2>1")
    with pytest.raises(ParseError):
        parse_orientation_spec(g, "0-1")
    with pytest.raises(ParseError):
        parse_orientation_spec(g, "0>2,1>2,2>3,3>4,4>0")
    with pytest.raises(NotAcyclic):
        parse_orientation_spec(g, "0>1,1>2,2>3,3>4,4>0")


def test_dot_exports():
    g = petersen()
    dot = graph_to_dot(g)
    assert dot.startswith("graph G {") and dot.count(" -- ") == 15
    omega = random_acyclic_orientation(g, random.Random(1))
    odot = orientation_to_dot(omega)
    assert odot.count(" -> ") == 15
    assert odot.count("doublecircle") == len(omega.sinks)
    cdot = coloring_to_dot(cycle(3), KdColoring(3, 1, (0, 1, 2)))
    assert '2 [label="2: 2"]' in cdot
