"""Graphviz rendering of bidirected graphs.

Each edge is drawn with ``dir=both``; the decoration at an end shows that
end's sign: ``normal`` (a filled arrowhead pointing into the vertex) for
``+`` and ``otee`` (an open bar) for ``-``.  The root is double-circled.
"""

from __future__ import annotations

from .graph import BidirectedGraph, Sign

ARROW = {Sign.PLUS: "normal", Sign.MINUS: "otee"}


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    graph: BidirectedGraph,
    root: str | None = None,
    name: str = "G",
    highlight: frozenset[str] = frozenset(),
) -> str:
    """DOT text for ``graph``; vertices in ``highlight`` are filled grey."""
    lines = [f"graph {_q(name)} {{", "  node [shape=circle];"]
    for v in graph.vertices:
        attrs = []
        if v == root:
            attrs.append("shape=doublecircle")
        if v in highlight:
            attrs.append("style=filled")
            attrs.append('fillcolor="#dddddd"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(v)}{suffix};")
    for e in graph.edges:
        # head decorates the second end, tail the first
        lines.append(
            f"  {_q(e.u)} -- {_q(e.v)} [dir=both, arrowtail={ARROW[e.su]}, arrowhead={ARROW[e.sv]}, label={_q(e.id)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
