"""Named graph constructions with fixed, documented labelings.

========================  ==================================================
name                      labeling
========================  ==================================================
``cycle(n)``              ``i -- i+1 (mod n)``
``path(n)``               ``i -- i+1``
``complete(n)``           all pairs
``odd_wheel(k)``          rim ``C_{2k+1}`` on ``0..2k``, hub ``2k+1``
``petersen()``            outer 5-cycle ``0..4``, spokes ``i -- i+5``,
                          inner ``5+i -- 5+((i+2) mod 5)``
``q_graph()``             ``petersen()`` minus vertex 0, relabelled ``v -> v-1``
``g_family(n)``           ``C_{8n}`` plus chords ``2i -- 2i+4n``, ``i < 2n``
``w_gadget(n)``           cycle ``v_1..v_{2n+1}`` on ``0..2n``, ``h_k`` on
                          ``2n+k``, apex ``u`` last (``4n+2``)
``compose_new(H, parts)`` ``H`` first, then the parts in order, then ``x``
========================  ==================================================
"""

from __future__ import annotations

from typing import Sequence

from .errors import DomainError
from .graph import UndirectedGraph, line_graph


def cycle(n: int) -> UndirectedGraph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return UndirectedGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> UndirectedGraph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return UndirectedGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> UndirectedGraph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return UndirectedGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def odd_wheel(k: int) -> UndirectedGraph:
    if k < 1:
        raise DomainError("odd_wheel needs k >= 1")
    rim = 2 * k + 1
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return UndirectedGraph(rim + 1, tuple(edges))


def petersen() -> UndirectedGraph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return UndirectedGraph(10, tuple(edges))


def q_graph() -> UndirectedGraph:
    g, _ = petersen().induced(range(1, 10))
    return g


def petersen_line() -> UndirectedGraph:
    return line_graph(petersen())


def g_family(n: int) -> UndirectedGraph:
    if n < 1:
        raise DomainError("g_family needs n >= 1")
    size = 8 * n
    edges = [(i, (i + 1) % size) for i in range(size)]
    edges += [(2 * i, 2 * i + 4 * n) for i in range(2 * n)]
    return UndirectedGraph(size, tuple(edges))


def compose_new(h: UndirectedGraph, parts: Sequence[UndirectedGraph]) -> UndirectedGraph:
    """Join every part to a new apex ``x`` and all of part ``i`` to vertex ``i`` of ``h``."""
    if len(parts) != h.n:
        raise DomainError(f"need exactly {h.n} parts, got {len(parts)}")
    edges = list(h.edges)
    offset = h.n
    part_vertices = []
    for part in parts:
        edges += [(a + offset, b + offset) for a, b in part.edges]
        part_vertices.append(range(offset, offset + part.n))
        offset += part.n
    x = offset
    for i, vs in enumerate(part_vertices):
        for v in vs:
            edges.append((v, x))
            edges.append((v, i))
    return UndirectedGraph(x + 1, tuple(edges))


def w_gadget(n: int) -> UndirectedGraph:
    if n < 1:
        raise DomainError("w_gadget needs n >= 1")
    return compose_new(cycle(2 * n + 1), [complete(1)] * (2 * n + 1))


_CATALOG = {
    "cycle": (cycle, True),
    "path": (path, True),
    "complete": (complete, True),
    "oddwheel": (odd_wheel, True),
    "petersen": (petersen, False),
    "petersen-line": (petersen_line, False),
    "q": (q_graph, False),
    "gn": (g_family, True),
    "w": (w_gadget, True),
}


def names() -> list[str]:
    return sorted(_CATALOG)


def catalog(name: str, param: int | None = None) -> UndirectedGraph:
    """Look up a named graph, e.g. ``catalog("cycle", 5)`` or ``catalog("petersen")``."""
    try:
        builder, takes_param = _CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown catalog graph {name!r}; known: {', '.join(names())}") from None
    if takes_param:
        if param is None:
            raise DomainError(f"catalog graph {name!r} needs an integer parameter")
        return builder(param)
    if param is not None:
        raise DomainError(f"catalog graph {name!r} takes no parameter")
    return builder()


def parse_catalog_spec(spec: str) -> UndirectedGraph:
    """Parse ``name`` or ``name:param`` (the part after ``catalog:``)."""
    name, _, param = spec.partition(":")
    if param:
        try:
            value = int(param)
        except ValueError:
            raise DomainError(f"catalog parameter must be an integer, got {param!r}") from None
        return catalog(name, value)
    return catalog(name)
