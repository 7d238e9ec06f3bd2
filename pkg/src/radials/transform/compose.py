"""Gluing constructions that build a rooted graph from smaller class members.

Each kind checks the hypotheses of its construction, performs the gluing sum
plus any admissible extra edges, and (at desk scale, or when asked) verifies
the promised class of the result and which ground it has.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..classify import STRONG, SUBLINEAR, class_report
from ..graph import (
    Edge,
    GluingTarget,
    GraphError,
    HypothesisError,
    RootedGraph,
    add_edges,
    gluing_sum,
    union,
)
from ..grounds import ALMOST_STRONG, EXTENDED, ground

SHARP = "sharp"
ROUND = "round"
SEMIRADIAL = "semiradial"
STRONG_ROOTED = "strong-rooted"
TRIPLEX = "triplex"
SUBLINEAR_ROOTED = "sublinear-rooted"
COMPOSE_KINDS = (SHARP, ROUND, SEMIRADIAL, STRONG_ROOTED, TRIPLEX, SUBLINEAR_ROOTED)

# above this many edges the conclusion is trusted unless verification is forced
VERIFY_MAX_EDGES = 24


class CompositionError(AssertionError):
    """A construction's promised conclusion did not hold on its output."""


@dataclass(frozen=True)
class Composition:
    result: RootedGraph
    kind: str
    targets: frozenset[str]
    verified: bool


def glue_targets(kind: str, parts: Sequence[RootedGraph]) -> frozenset[str]:
    """The vertex set ``T`` the outer glue vertex is identified with."""
    if kind == TRIPLEX:
        h1 = parts[0]
        return h1.graph.vertex_set - {h1.root}
    inner = parts[1]
    if kind in (SHARP, ROUND):
        return inner.graph.vertex_set - {inner.root}
    if kind in (SEMIRADIAL, STRONG_ROOTED):
        return inner.graph.vertex_set
    if kind == SUBLINEAR_ROOTED:
        return ground(inner, EXTENDED).shell
    raise GraphError(f"unknown compose kind {kind!r}")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _check_parts(kind: str, parts: Sequence[RootedGraph]) -> None:
    if kind not in COMPOSE_KINDS:
        raise GraphError(f"unknown compose kind {kind!r}")
    want = 3 if kind == TRIPLEX else 2
    if len(parts) != want:
        raise GraphError(f"{kind} takes {want} parts, got {len(parts)}")
    a = parts[0].sign
    _require(all(p.sign == a for p in parts), "all parts must share the orientation")
    if kind == TRIPLEX:
        h1, h2, h3 = parts
        _require(h1.root == h2.root, "first and second parts must share their root")
        _require(h1.graph.vertex_set & h2.graph.vertex_set == {h1.root}, "first and second parts may share only the root")
        _require(not (h1.graph.edge_ids & h2.graph.edge_ids), "first and second parts share edge ids")
        # a root loop of the second part would be absorbed by the almost strong ground
        _require(not h2.graph.loops_at(h1.root), "second part must have no loop at the root")
        _require(not (h3.graph.vertex_set & (h1.graph.vertex_set | h2.graph.vertex_set)), "third part must be disjoint")
        _require(class_report(h1).almost_strong_radial, "first part must be an almost strong radial")
        _require(class_report(h2).sublinear_radial, "second part must be a sublinear radial")
        _require(class_report(h3).linear_semiradial, "third part must be a linear semiradial")
        if len(h1.graph) == 1:
            _require(len(h3.graph) == 1, "a trivial first part forces a trivial third part")
        return
    g, h = parts
    _require(not (g.graph.vertex_set & h.graph.vertex_set), "parts must be vertex-disjoint")
    cg, ch = class_report(g), class_report(h)
    if kind == SHARP:
        _require(cg.round, "outer part must be a round radial")
        _require(ch.linear_semiradial, "inner part must be a linear semiradial")
        _require(not g.graph.loops_at(g.root), "outer part must have no loop at its root")
    elif kind == ROUND:
        _require(cg.sharp, "outer part must be a sharp semiradial")
        _require(ch.almost_strong_radial, "inner part must be an almost strong radial")
    elif kind == SEMIRADIAL:
        _require(cg.sharp, "outer part must be a sharp semiradial")
        _require(ch.absolute_semiradial, "inner part must be an absolute semiradial")
    elif kind == STRONG_ROOTED:
        _require(cg.sharp, "outer part must be a sharp semiradial")
        _require(ch.strong_radial, "inner part must be a strong radial")
    elif kind == SUBLINEAR_ROOTED:
        _require(cg.round and cg.root_kind == SUBLINEAR, "outer part must be a round radial")
        _require(ch.triplex, "inner part must be a triplex radial")
        _require(not g.graph.loops_at(g.root), "outer part must have no loop at its root")
        _require(bool(ground(h, EXTENDED).shell), "inner triplex must have a nonempty shell")


def _check_extra(kind: str, parts: Sequence[RootedGraph], extra: Sequence[Edge]) -> None:
    if not extra:
        return
    a = parts[0].sign
    if kind in (ROUND, SUBLINEAR_ROOTED):
        g, h = parts
        allowed = g.graph.vertex_set - {g.root}
        for e in extra:
            _require(not e.is_loop, f"extra edge {e.id} must not be a loop")
            ok = (e.u == h.root and e.su == a and e.v in allowed) or (e.v == h.root and e.sv == a and e.u in allowed)
            _require(ok, f"extra edge {e.id} must join the root (sign {a}) to the outer part")
        return
    if kind == TRIPLEX:
        h1, h2, h3 = parts
        r = h1.root
        s2 = h2.graph.vertex_set - {r}
        other = (h1.graph.vertex_set - {r}) | (h3.graph.vertex_set - {h3.root})
        s3 = h3.graph.vertex_set - {h3.root}
        for e in extra:
            _require(not e.is_loop, f"extra edge {e.id} must not be a loop")
            ok = False
            for (x, sx), (y, _) in ((e.ends()[0], e.ends()[1]), (e.ends()[1], e.ends()[0])):
                if x in s2 and y in other and sx == a:
                    ok = True
                if x == r and y in s3 and sx == a:
                    ok = True
            _require(ok, f"extra edge {e.id} is not an admissible triplex wiring edge")
        return
    raise HypothesisError(f"{kind} composition takes no extra edges")


def _verify(kind: str, out: RootedGraph, parts: Sequence[RootedGraph]) -> None:
    rep = class_report(out)

    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise CompositionError(f"{kind}: {msg}")

    if kind == TRIPLEX:
        h1, h2, h3 = parts
        need(rep.triplex, "result is not a triplex radial")
        ext = ground(out, EXTENDED)
        need(ground(out, ALMOST_STRONG).graph == h1.graph, "almost strong ground differs from the first part")
        need(ext.shell1 == h2.graph.vertex_set - {h1.root}, "first shell differs from the second part")
        need(ext.shell2 == h3.graph.vertex_set - {h3.root}, "second shell differs from the third part")
        return
    h = parts[1]
    if kind == SHARP:
        need(rep.sharp, "result is not sharp")
        need(ground(out, "linear").graph == h.graph, "linear ground differs from the inner part")
    elif kind == ROUND:
        need(rep.round, "result is not round")
        need(ground(out, ALMOST_STRONG).graph == h.graph, "almost strong ground differs from the inner part")
    elif kind == SEMIRADIAL:
        need(rep.semiradial, "result is not a semiradial")
        need(ground(out, "absolute").graph == h.graph, "absolute ground differs from the inner part")
    elif kind == STRONG_ROOTED:
        need(rep.radial and rep.root_kind == STRONG, "result is not a radial with strong root")
        need(ground(out, "strong").graph == h.graph, "strong ground differs from the inner part")
    elif kind == SUBLINEAR_ROOTED:
        need(rep.radial and rep.root_kind == SUBLINEAR, "result is not a radial with sublinear root")
        need(ground(out, EXTENDED).graph == h.graph, "extended ground differs from the inner part")


def compose(
    kind: str,
    parts: Sequence[RootedGraph],
    assignment: Mapping[str, GluingTarget],
    extra_edges: Iterable[Edge] = (),
    verify: bool | None = None,
) -> RootedGraph:
    """Glue ``parts`` by the construction ``kind``.

    Two-part kinds take ``(outer G rooted at s, inner H rooted at r)`` and
    identify ``s`` with a target set of ``H``; ``triplex`` takes
    ``(H1, H2, H3)`` and glues ``H3`` (rooted at ``s``) onto ``H1 + H2``.
    The result is rooted at the inner root.
    """
    return compose_detailed(kind, parts, assignment, extra_edges, verify).result


def compose_detailed(
    kind: str,
    parts: Sequence[RootedGraph],
    assignment: Mapping[str, GluingTarget],
    extra_edges: Iterable[Edge] = (),
    verify: bool | None = None,
) -> Composition:
    _check_parts(kind, parts)
    extra = list(extra_edges)
    _check_extra(kind, parts, extra)
    targets = glue_targets(kind, parts)
    if kind == TRIPLEX:
        h1, h2, h3 = parts
        inner = RootedGraph(union(h1.graph, h2.graph), h1.root, h1.sign)
        outer = h3
    else:
        outer, inner = parts
    glued = gluing_sum(outer.graph, outer.root, inner.graph, targets, assignment)
    ids = glued.edge_ids
    for e in extra:
        if e.id in ids:
            raise GraphError(f"extra edge id {e.id!r} clashes")
    out = RootedGraph(add_edges(glued, extra), inner.root, inner.sign)
    if verify is None:
        verify = out.graph.n_edges <= VERIFY_MAX_EDGES
    if verify:
        _verify(kind, out, parts)
    return Composition(out, kind, targets, bool(verify))


def disjoint_copy(rg: RootedGraph, prefix: str, keep_root: bool = False) -> tuple[RootedGraph, dict[str, str]]:
    """Copy with prefixed vertex names and edge ids; returns the vertex renaming."""
    keep = [rg.root] if keep_root else []
    g = rg.graph.prefixed(prefix, keep=keep)
    vmap = {v: (v if v in keep else prefix + v) for v in rg.graph.vertices}
    return RootedGraph(g, vmap[rg.root], rg.sign), vmap


__all__ = [
    "COMPOSE_KINDS",
    "SHARP",
    "ROUND",
    "SEMIRADIAL",
    "STRONG_ROOTED",
    "TRIPLEX",
    "SUBLINEAR_ROOTED",
    "CompositionError",
    "Composition",
    "compose",
    "compose_detailed",
    "glue_targets",
    "disjoint_copy",
]
