"""Bidirected multigraphs and the structural operators used on them.

A bidirected graph is a multigraph whose every edge end carries a sign.
Loops are single edge records with two signed ends at one vertex.  All
values here are immutable; every operator returns a fresh graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping, Union


class GraphError(ValueError):
    """Malformed input to a graph operator (dangling ids, clashes, ...)."""


class HypothesisError(GraphError):
    """A construction was asked for outside its hypotheses."""


class Sign(enum.IntEnum):
    PLUS = 1
    MINUS = -1

    def __neg__(self) -> "Sign":  # type: ignore[override]
        return Sign(-int(self))

    def __str__(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, text: str) -> "Sign":
        if text == "+":
            return cls.PLUS
        if text == "-":
            return cls.MINUS
        raise GraphError(f"bad sign {text!r}")


PLUS = Sign.PLUS
MINUS = Sign.MINUS
SIGNS = (PLUS, MINUS)


@dataclass(frozen=True)
class Edge:
    """Edge ``id`` joining ``u`` (sign ``su``) and ``v`` (sign ``sv``)."""

    id: str
    u: str
    su: Sign
    v: str
    sv: Sign

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def ends(self) -> tuple[tuple[str, Sign], tuple[str, Sign]]:
        return (self.u, self.su), (self.v, self.sv)

    def sign_at(self, vertex: str) -> Sign:
        """Sign of ``vertex`` over this edge (first end for loops)."""
        if vertex == self.u:
            return self.su
        if vertex == self.v:
            return self.sv
        raise GraphError(f"vertex {vertex!r} is not an end of edge {self.id!r}")

    def other(self, vertex: str) -> tuple[str, Sign]:
        """The opposite end seen from a non-loop end at ``vertex``."""
        if vertex == self.u:
            return self.v, self.sv
        if vertex == self.v:
            return self.u, self.su
        raise GraphError(f"vertex {vertex!r} is not an end of edge {self.id!r}")

    def renamed(self, mapping: Mapping[str, str], new_id: str | None = None) -> "Edge":
        return Edge(
            self.id if new_id is None else new_id,
            mapping.get(self.u, self.u),
            self.su,
            mapping.get(self.v, self.v),
            self.sv,
        )

    def __str__(self) -> str:
        return f"{self.id}=({self.u}:{self.su}, {self.v}:{self.sv})"


class BidirectedGraph:
    """Finite bidirected multigraph with stable edge ids.

    Vertices are strings.  Iteration orders (``vertices``, ``edges``) are
    sorted so that every downstream computation is deterministic.
    """

    __slots__ = ("_vertices", "_edges", "__dict__")

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[Edge] = ()):
        vs = frozenset(vertices)
        es: dict[str, Edge] = {}
        for e in edges:
            if e.id in es:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end in (e.u, e.v):
                if end not in vs:
                    raise GraphError(f"edge {e.id!r} references unknown vertex {end!r}")
            es[e.id] = e
        self._vertices = vs
        self._edges = {k: es[k] for k in sorted(es)}

    # -- basic access -------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self._vertices))

    @property
    def vertex_set(self) -> frozenset[str]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(self._edges)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge {edge_id!r}") from None

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @cached_property
    def incident(self) -> Mapping[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self._edges.values():
            inc[e.u].append(e)
            if not e.is_loop:
                inc[e.v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def loops_at(self, vertex: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.incident[vertex] if e.is_loop)

    def neighbors(self, vertex: str) -> frozenset[str]:
        out = set()
        for e in self.incident[vertex]:
            if not e.is_loop:
                out.add(e.other(vertex)[0])
        return frozenset(out)

    def require_vertices(self, vertices: Iterable[str]) -> frozenset[str]:
        vs = frozenset(vertices)
        missing = vs - self._vertices
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)}")
        return vs

    # -- equality -----------------------------------------------------

    def _key(self):
        return self._vertices, frozenset(self._edges.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BidirectedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        es = ", ".join(str(e) for e in self.edges)
        return f"BidirectedGraph(V={list(self.vertices)}, E=[{es}])"

    # -- derived graphs -----------------------------------------------

    def subgraph(self, vertices: Iterable[str], edge_ids: Iterable[str]) -> "BidirectedGraph":
        vs = self.require_vertices(vertices)
        es = [self.edge(i) for i in edge_ids]
        return BidirectedGraph(vs, es)

    def induced(self, vertices: Iterable[str]) -> "BidirectedGraph":
        """Vertex-induced subgraph ``G[X]`` (loops over ``X`` included)."""
        vs = self.require_vertices(vertices)
        return BidirectedGraph(vs, (e for e in self.edges if e.u in vs and e.v in vs))

    def edge_spanned(self, edge_ids: Iterable[str], extra: Iterable[str] = ()) -> "BidirectedGraph":
        """Subgraph formed by the listed edges, their ends and ``extra`` vertices."""
        es = [self.edge(i) for i in edge_ids]
        vs = set(self.require_vertices(extra))
        for e in es:
            vs.update((e.u, e.v))
        return BidirectedGraph(vs, es)

    def renamed(self, mapping: Mapping[str, str], edge_mapping: Mapping[str, str] | None = None) -> "BidirectedGraph":
        edge_mapping = edge_mapping or {}
        vs = [mapping.get(v, v) for v in self.vertices]
        if len(set(vs)) != len(vs):
            raise GraphError("vertex renaming is not injective")
        return BidirectedGraph(vs, (e.renamed(mapping, edge_mapping.get(e.id)) for e in self.edges))

    def prefixed(self, vertex_prefix: str, edge_prefix: str | None = None, keep: Iterable[str] = ()) -> "BidirectedGraph":
        """Copy with every vertex (except ``keep``) and every edge id prefixed."""
        keep = set(keep)
        vmap = {v: v if v in keep else vertex_prefix + v for v in self.vertices}
        emap = {e.id: (edge_prefix if edge_prefix is not None else vertex_prefix) + e.id for e in self.edges}
        return self.renamed(vmap, emap)


@dataclass(frozen=True)
class RootedGraph:
    """A bidirected graph with a root and the orientation under study."""

    graph: BidirectedGraph
    root: str
    sign: Sign = PLUS

    def __post_init__(self):
        if self.root not in self.graph:
            raise GraphError(f"root {self.root!r} is not a vertex")

    def with_graph(self, graph: BidirectedGraph, root: str | None = None) -> "RootedGraph":
        return RootedGraph(graph, self.root if root is None else root, self.sign)

    def flipped(self) -> "RootedGraph":
        return replace(self, sign=-self.sign)

    @property
    def is_trivial(self) -> bool:
        return len(self.graph) == 1 and self.graph.n_edges == 0


def trivial_graph(root: str = "r") -> BidirectedGraph:
    return BidirectedGraph([root], [])


# -- cuts --------------------------------------------------------------


def cut_edges(g: BidirectedGraph, s: Iterable[str]) -> tuple[Edge, ...]:
    """Non-loop edges with exactly one end in ``s``."""
    ss = g.require_vertices(s)
    return tuple(e for e in g.edges if (e.u in ss) != (e.v in ss))


def signed_cut(g: BidirectedGraph, s: Iterable[str], sign: Sign) -> tuple[frozenset[str], frozenset[str]]:
    """Edges leaving ``s`` whose ``s``-side end has ``sign``, and their outer ends."""
    ss = g.require_vertices(s)
    edges, nbrs = set(), set()
    for e in g.edges:
        if e.u in ss and e.v not in ss and e.su == sign:
            edges.add(e.id)
            nbrs.add(e.v)
        elif e.v in ss and e.u not in ss and e.sv == sign:
            edges.add(e.id)
            nbrs.add(e.u)
    return frozenset(edges), frozenset(nbrs)


def neighborhood(g: BidirectedGraph, s: Iterable[str]) -> frozenset[str]:
    """Vertices outside ``s`` adjacent to ``s``."""
    ss = g.require_vertices(s)
    out = set()
    for e in cut_edges(g, ss):
        out.add(e.v if e.u in ss else e.u)
    return frozenset(out)


def edges_between(g: BidirectedGraph, a: Iterable[str], b: Iterable[str]) -> frozenset[str]:
    """Ids of non-loop edges with one end in ``a`` and the other in ``b``."""
    aa, bb = frozenset(a), frozenset(b)
    return frozenset(
        e.id for e in g.edges if not e.is_loop and ((e.u in aa and e.v in bb) or (e.v in aa and e.u in bb))
    )


# -- contraction and gluing --------------------------------------------


def fresh_name(taken: Iterable[str], base: str) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def contract(g: BidirectedGraph, x: Iterable[str], name: str | None = None) -> tuple[BidirectedGraph, str]:
    """``G/X``: merge ``X`` into one vertex and drop every edge inside ``X``."""
    xs = g.require_vertices(x)
    if not xs:
        raise GraphError("cannot contract an empty vertex set")
    rest = g.vertex_set - xs
    if name is None:
        name = "[" + ",".join(sorted(xs)) + "]"
    name = fresh_name(rest, name) if name in rest else name
    edges = []
    for e in g.edges:
        uin, vin = e.u in xs, e.v in xs
        if uin and vin:
            continue
        edges.append(Edge(e.id, name if uin else e.u, e.su, name if vin else e.v, e.sv))
    return BidirectedGraph(rest | {name}, edges), name


GluingTarget = Union[str, "tuple[str, str]"]


def glue_domain(g: BidirectedGraph, s: str) -> tuple[Edge, ...]:
    """The ``s``-incident edges (cut edges and loops) redistributed by a gluing."""
    return g.incident[s]


def gluing_sum(
    g: BidirectedGraph,
    s: str,
    h: BidirectedGraph,
    targets: Iterable[str],
    assignment: Mapping[str, GluingTarget],
) -> BidirectedGraph:
    """``(G; s) + (H; T)``: identify ``s`` with the set ``T`` of ``H``.

    ``assignment`` maps each ``s``-incident edge id to a target in ``T``; a
    loop over ``s`` maps to an ordered pair ``(t1, t2)`` receiving its two
    ends in order.  Signs are carried over unchanged.
    """
    if s not in g:
        raise GraphError(f"glue vertex {s!r} not in G")
    if g.vertex_set & h.vertex_set:
        raise GraphError(f"graphs share vertices {sorted(g.vertex_set & h.vertex_set)}")
    if g.edge_ids & h.edge_ids:
        raise GraphError(f"graphs share edge ids {sorted(g.edge_ids & h.edge_ids)}")
    ts = h.require_vertices(targets)
    domain = glue_domain(g, s)
    dom_ids = {e.id for e in domain}
    extra = set(assignment) - dom_ids
    if extra:
        raise GraphError(f"assignment names edges not incident to {s!r}: {sorted(extra)}")
    edges = list(h.edges)
    for e in g.edges:
        if e.id not in dom_ids:
            edges.append(e)
            continue
        if e.id not in assignment:
            raise GraphError(f"assignment misses edge {e.id!r}")
        tgt = assignment[e.id]
        if e.is_loop:
            if isinstance(tgt, str) or len(tgt) != 2:
                raise GraphError(f"loop {e.id!r} needs a pair of targets")
            t1, t2 = tgt
            for t in (t1, t2):
                if t not in ts:
                    raise GraphError(f"target {t!r} outside T")
            edges.append(Edge(e.id, t1, e.su, t2, e.sv))
        else:
            if not isinstance(tgt, str):
                raise GraphError(f"edge {e.id!r} needs a single target")
            if tgt not in ts:
                raise GraphError(f"target {tgt!r} outside T")
            if e.u == s:
                edges.append(Edge(e.id, tgt, e.su, e.v, e.sv))
            else:
                edges.append(Edge(e.id, e.u, e.su, tgt, e.sv))
    vs = (g.vertex_set - {s}) | h.vertex_set
    return BidirectedGraph(vs, edges)


# -- edits ---------------------------------------------------------------


def add_edges(g: BidirectedGraph, edges: Iterable[Edge]) -> BidirectedGraph:
    return BidirectedGraph(g.vertex_set, list(g.edges) + list(edges))


def add_edge(g: BidirectedGraph, edge: Edge) -> BidirectedGraph:
    return add_edges(g, [edge])


def delete_edges(g: BidirectedGraph, edge_ids: Iterable[str]) -> BidirectedGraph:
    ids = set(edge_ids)
    for i in ids:
        g.edge(i)
    return BidirectedGraph(g.vertex_set, (e for e in g.edges if e.id not in ids))


def union(*graphs: BidirectedGraph) -> BidirectedGraph:
    """``H1 + H2``: shared vertices merge; shared edge ids must be identical records."""
    vs: set[str] = set()
    es: dict[str, Edge] = {}
    for g in graphs:
        vs |= g.vertex_set
        for e in g.edges:
            if e.id in es and es[e.id] != e:
                raise GraphError(f"edge id clash on {e.id!r}")
            es[e.id] = e
    return BidirectedGraph(vs, es.values())


def disjoint_union(*graphs: BidirectedGraph) -> BidirectedGraph:
    seen: set[str] = set()
    for g in graphs:
        if g.vertex_set & seen:
            raise GraphError("graphs are not vertex-disjoint")
        seen |= g.vertex_set
    return union(*graphs)


def is_subgraph(h: BidirectedGraph, g: BidirectedGraph) -> bool:
    return h.vertex_set <= g.vertex_set and all(g.has_edge(e.id) and g.edge(e.id) == e for e in h.edges)
