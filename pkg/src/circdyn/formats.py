"""Plain-text file formats and DOT export.

``.ug``   ``n <count>`` then ``e u v`` per edge
``.tmg``  ``n <count>`` then ``a u v <c_uv> <T_uv>`` per arc (``c`` as int or ``num/den``)
``.col``  ``p <perimeter>`` then ``c v <point>`` per vertex
``.kd``   ``kd <k> <d>`` then ``c v <color>`` per vertex

Lines starting with ``#`` and blank lines are ignored everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DomainError, ParseError
from .graph import (
    AcyclicOrientation,
    CircularColoring,
    KdColoring,
    Marking,
    UndirectedGraph,
    WeightedSymmetricDigraph,
)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def _frac(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: expected a rational, got {tok!r}") from None


def _header(lines, keyword: str, arity: int):
    try:
        lineno, parts = next(lines)
    except StopIteration:
        raise ParseError(f"empty file: expected a '{keyword}' header") from None
    if parts[0] != keyword or len(parts) != arity + 1:
        raise ParseError(f"line {lineno}: expected '{keyword}' header with {arity} value(s)")
    return lineno, parts[1:]


def _build(ctor, *args):
    try:
        return ctor(*args)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


# --- undirected graphs ------------------------------------------------------


def parse_ug(text: str) -> UndirectedGraph:
    lines = _lines(text)
    lineno, (count,) = _header(lines, "n", 1)
    n = _int(count, lineno)
    edges = []
    for lineno, parts in lines:
        if parts[0] != "e" or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'e u v'")
        edges.append((_int(parts[1], lineno), _int(parts[2], lineno)))
    return _build(UndirectedGraph, n, tuple(edges))


def format_ug(g: UndirectedGraph) -> str:
    out = [f"n {g.n}"]
    out += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(out) + "\n"


# --- timed marked graphs ----------------------------------------------------


def parse_tmg(text: str) -> tuple[WeightedSymmetricDigraph, Marking]:
    lines = _lines(text)
    lineno, (count,) = _header(lines, "n", 1)
    n = _int(count, lineno)
    weights = {}
    tokens = {}
    for lineno, parts in lines:
        if parts[0] != "a" or len(parts) != 5:
            raise ParseError(f"line {lineno}: expected 'a u v c T'")
        arc = (_int(parts[1], lineno), _int(parts[2], lineno))
        if arc in weights:
            raise ParseError(f"line {lineno}: duplicate arc {arc}")
        weights[arc] = _frac(parts[3], lineno)
        tokens[arc] = _int(parts[4], lineno)
    d = _build(WeightedSymmetricDigraph, n, weights)
    return d, _build(Marking, tokens)


def format_tmg(d: WeightedSymmetricDigraph, t: Marking) -> str:
    out = [f"n {d.n}"]
    out += [f"a {u} {v} {frac_str(c)} {t[(u, v)]}" for (u, v), c in d.weights.items()]
    return "\n".join(out) + "\n"


# --- colorings --------------------------------------------------------------


def _per_vertex(lines, parse_value) -> list:
    values = {}
    for lineno, parts in lines:
        if parts[0] != "c" or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'c v value'")
        v = _int(parts[1], lineno)
        if v in values:
            raise ParseError(f"line {lineno}: vertex {v} listed twice")
        values[v] = parse_value(parts[2], lineno)
    if sorted(values) != list(range(len(values))):
        raise ParseError("coloring must list vertices 0..n-1 exactly once")
    return [values[v] for v in range(len(values))]


def parse_col(text: str) -> CircularColoring:
    lines = _lines(text)
    lineno, (p,) = _header(lines, "p", 1)
    perimeter = _frac(p, lineno)
    return _build(CircularColoring, perimeter, tuple(_per_vertex(lines, _frac)))


def format_col(phi: CircularColoring) -> str:
    out = [f"p {frac_str(phi.perimeter)}"]
    out += [f"c {v} {frac_str(x)}" for v, x in enumerate(phi.points)]
    return "\n".join(out) + "\n"


def parse_kd(text: str) -> KdColoring:
    lines = _lines(text)
    lineno, (k, d) = _header(lines, "kd", 2)
    return _build(KdColoring, _int(k, lineno), _int(d, lineno), tuple(_per_vertex(lines, _int)))


def format_kd(f: KdColoring) -> str:
    out = [f"kd {f.k} {f.d}"]
    out += [f"c {v} {c}" for v, c in enumerate(f.colors)]
    return "\n".join(out) + "\n"


def parse_coloring_file(text: str) -> CircularColoring | KdColoring:
    """Dispatch on the header keyword."""
    for _, parts in _lines(text):
        return parse_kd(text) if parts[0] == "kd" else parse_col(text)
    raise ParseError("empty coloring file")


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


# --- orientation specs ------------------------------------------------------


def parse_orientation_spec(g: UndirectedGraph, spec: str) -> AcyclicOrientation:
    """``"0>1,2>1"``: every edge exactly once; unspecified edges are an error."""
    arcs = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        a, sep, b = item.partition(">")
        if not sep:
            raise ParseError(f"bad orientation item {item!r}; expected 'u>v'")
        try:
            arcs.append((int(a), int(b)))
        except ValueError:
            raise ParseError(f"bad orientation item {item!r}") from None
    try:
        return AcyclicOrientation.from_arcs(g, arcs)
    except DomainError as exc:
        if type(exc) is DomainError:
            raise ParseError(str(exc)) from None
        raise


def format_orientation_spec(omega: AcyclicOrientation) -> str:
    return ",".join(f"{a}>{b}" for a, b in omega.arcs)


# --- DOT --------------------------------------------------------------------


def _dot(kind: str, name: str, nodes: Iterable[str], lines: Iterable[str]) -> str:
    body = [f"  {n};" for n in nodes] + [f"  {e};" for e in lines]
    return f"{kind} {name} {{\n" + "\n".join(body) + "\n}\n"


def graph_to_dot(g: UndirectedGraph, name: str = "G") -> str:
    return _dot("graph", name, (str(v) for v in range(g.n)), (f"{u} -- {v}" for u, v in g.edges))


def orientation_to_dot(omega: AcyclicOrientation, name: str = "omega") -> str:
    sinks = omega.sinks
    nodes = [f"{v} [shape=doublecircle]" if v in sinks else str(v) for v in range(omega.host.n)]
    return _dot("digraph", name, nodes, (f"{a} -> {b}" for a, b in omega.arcs))


def coloring_to_dot(g: UndirectedGraph, phi: CircularColoring | KdColoring, name: str = "coloring") -> str:
    if isinstance(phi, KdColoring):
        labels = [str(c) for c in phi.colors]
    else:
        labels = [frac_str(x) for x in phi.points]
    nodes = [f'{v} [label="{v}: {lab}"]' for v, lab in enumerate(labels)]
    return _dot("graph", name, nodes, (f"{u} -- {v}" for u, v in g.edges))
