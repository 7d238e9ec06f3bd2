"""Bounded closure of the ear grammars, for comparing against the class predicates.

Graphs are handled as *shapes*: a sorted vertex tuple plus a sorted multiset
of edge types, so two labelled multigraphs that differ only in edge ids are
the same shape.  The closures enumerate every diear (simple or scoop) that
fits in the vertex and edge bounds, so at tiny scale they are exact.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator

from ..classify import class_report
from ..families import TINY_NAMES, tiny_graphs
from ..graph import SIGNS, BidirectedGraph, Edge, RootedGraph, Sign

EdgeType = tuple[str, Sign, str, Sign]
Shape = tuple[tuple[str, ...], tuple[EdgeType, ...]]

GRAMMARS = ("sqrset", "acset", "nacset")
GRAMMAR_CLASS = {"sqrset": "absolute-semiradial", "acset": "strong-radial", "nacset": "almost-strong-radial"}


def _norm(u: str, su: Sign, v: str, sv: Sign) -> EdgeType:
    if u == v:
        return (u, min(su, sv), v, max(su, sv))
    return (u, su, v, sv) if u < v else (v, sv, u, su)


def shape(vertices: Iterable[str], edges: Iterable[EdgeType]) -> Shape:
    return tuple(sorted(vertices)), tuple(sorted(_norm(*e) for e in edges))


def shape_of(g: BidirectedGraph) -> Shape:
    return shape(g.vertices, ((e.u, e.su, e.v, e.sv) for e in g.edges))


def graph_of(s: Shape) -> BidirectedGraph:
    return BidirectedGraph(s[0], [Edge(f"e{i + 1}", *t) for i, t in enumerate(s[1])])


def _walks(start: Iterable[str], inner: list[str], end: Iterable[str], length: int, first: Sign | None, last: Sign | None):
    """Coherent walks of ``length`` edges as edge-type lists plus their vertex sequences."""
    ends = list(end)
    for v0 in start:
        for mids in product(inner, repeat=length - 1):
            for vl in ends:
                seq = (v0, *mids, vl)
                firsts = SIGNS if first is None else (first,)
                for d0 in firsts:
                    for arrs in product(SIGNS, repeat=length):
                        if last is not None and arrs[-1] != last:
                            continue
                        dep, out = d0, []
                        for i in range(length):
                            out.append((seq[i], dep, seq[i + 1], arrs[i]))
                            dep = -arrs[i]
                        yield seq, out


def diears(base: Iterable[str], pool: Iterable[str], budget: int) -> Iterator[tuple[frozenset[str], list[EdgeType]]]:
    """Every diear relative to vertex set ``base`` using new names from ``pool``.

    Yields ``(new vertices, edge types)`` for ears of at most ``budget`` edges.
    """
    s = sorted(base)
    fresh = sorted(set(pool) - set(s))
    for length in range(1, budget + 1):
        for seq, es in _walks(s, fresh, s, length, None, None):
            yield frozenset(seq[1:-1]), es
    # scoops: grip plus a closed walk of at least one edge at a new vertex
    for y in s:
        for x in fresh:
            for sy, t in product(SIGNS, SIGNS):
                for length in range(1, budget):
                    for seq, es in _walks([x], fresh, [x], length, -t, -t):
                        yield frozenset(seq), [(y, sy, x, t), *es]


def _close(seeds: Iterable[Shape], pool: list[str], max_vertices: int, max_edges: int) -> set[Shape]:
    seen: set[Shape] = set()
    frontier = [s for s in seeds if len(s[0]) <= max_vertices and len(s[1]) <= max_edges]
    seen.update(frontier)
    while frontier:
        nxt = []
        for vs, es in frontier:
            budget = max_edges - len(es)
            if budget <= 0:
                continue
            for new, ear in diears(vs, pool, budget):
                if len(vs) + len(new) > max_vertices:
                    continue
                sh = shape(set(vs) | new, list(es) + ear)
                if sh not in seen:
                    seen.add(sh)
                    nxt.append(sh)
        frontier = nxt
    return seen


def sqrset(root: str, pool: list[str], max_vertices: int, max_edges: int) -> set[Shape]:
    return _close([shape([root], [])], pool, max_vertices, max_edges)


def acset(root: str, alpha: Sign, pool: list[str], max_vertices: int, max_edges: int) -> set[Shape]:
    fresh = [v for v in pool if v != root]
    bases = []
    for length in range(1, max_edges + 1):
        for seq, es in _walks([root], fresh, [root], length, -alpha, -alpha):
            bases.append(shape(set(seq), es))
    return _close(bases, pool, max_vertices, max_edges)


def nacset(root: str, alpha: Sign, pool: list[str], max_vertices: int, max_edges: int) -> set[Shape]:
    """Closure of the three almost strong clauses, plus the bare root."""
    others = [v for v in pool if v != root]
    members: set[Shape] = {shape([root], [])}
    for r2 in others:
        for beta in SIGNS:
            for vs, es in acset(r2, beta, others, max_vertices - 1, max_edges - 1):
                members.add(shape((root, *vs), (*es, (root, -alpha, r2, beta))))

    def fits(sh: Shape) -> bool:
        return len(sh[0]) <= max_vertices and len(sh[1]) <= max_edges

    frontier = list(members)
    while frontier:
        nxt = []
        for vs, es in frontier:
            grown = []
            if len(es) < max_edges:
                for v in vs:
                    for sv in SIGNS:
                        grown.append(shape(vs, (*es, (root, alpha, v, sv))))
            for vs2, es2 in list(members):
                if set(vs) & set(vs2) == {root}:
                    grown.append(shape(set(vs) | set(vs2), es + es2))
            for sh in grown:
                if fits(sh) and sh not in members:
                    members.add(sh)
                    nxt.append(sh)
        frontier = nxt
    return members


def grammar_shapes(name: str, alpha: Sign, max_vertices: int = 3, max_edges: int = 3) -> set[Shape]:
    """Shapes on the tiny names reachable by grammar ``name`` (root ``r``)."""
    pool = list(TINY_NAMES[:max_vertices])
    if name == "sqrset":
        out = sqrset("r", pool, max_vertices, max_edges)
    elif name == "acset":
        out = acset("r", alpha, pool, max_vertices, max_edges)
    elif name == "nacset":
        out = nacset("r", alpha, pool, max_vertices, max_edges)
    else:
        raise ValueError(f"unknown grammar {name!r}")
    # keep vertex sets that are prefixes of the name list, like the exhaustive family
    return {s for s in out if s[0] == tuple(sorted(pool[: len(s[0])]))}


def predicate_shapes(name: str, alpha: Sign, max_vertices: int = 3, max_edges: int = 3) -> set[Shape]:
    cls = GRAMMAR_CLASS[name]
    out = set()
    for g in tiny_graphs(max_vertices, max_edges):
        if class_report(RootedGraph(g, "r", alpha)).has(cls):
            out.add(shape_of(g))
    return out


def completeness(name: str, alpha: Sign, max_vertices: int = 3, max_edges: int = 3) -> dict:
    """Both one-sided differences between grammar closure and predicate."""
    gram = grammar_shapes(name, alpha, max_vertices, max_edges)
    pred = predicate_shapes(name, alpha, max_vertices, max_edges)
    return {
        "grammar": name,
        "sign": str(alpha),
        "members": len(pred),
        "grammar_only": sorted(gram - pred),
        "predicate_only": sorted(pred - gram),
    }


__all__ = [
    "GRAMMARS",
    "GRAMMAR_CLASS",
    "shape",
    "shape_of",
    "graph_of",
    "diears",
    "sqrset",
    "acset",
    "nacset",
    "grammar_shapes",
    "predicate_shapes",
    "completeness",
]
