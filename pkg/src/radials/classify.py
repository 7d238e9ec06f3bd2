"""Vertex classes and graph-class predicates of rooted bidirected graphs.

Everything is read off a :class:`ReachProfile`.  The predicates are also
exposed in bitset form (:func:`class_bits`) so the ground searches can test
thousands of subgraphs without building graph objects.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .ditrail import Compiled, ReachProfile, compiled, reach_profile
from .graph import MINUS, PLUS, BidirectedGraph, RootedGraph, Sign, signed_cut

ABSOLUTE = "absolute"
LINEAR = "linear"
STRONG = "strong"
SUBLINEAR = "sublinear"
NEITHER = "neither"
NOT_RADIAL = "not-radial"


@dataclass(frozen=True)
class VertexClass:
    """``trail`` is absolute/linear/neither, ``strict`` is strong/sublinear/neither.

    ``trail_sign`` is the ``a`` of ``Linear(a)``; ``strict_sign`` is the
    orientation the strict class was taken for.
    """

    vertex: str
    trail: str
    trail_sign: Sign | None
    strict: str
    strict_sign: Sign

    @property
    def trail_label(self) -> str:
        return f"linear({self.trail_sign})" if self.trail == LINEAR else self.trail

    @property
    def strict_label(self) -> str:
        return self.strict if self.strict == NEITHER else f"{self.strict}({self.strict_sign})"

    def is_linear(self, a: Sign) -> bool:
        return self.trail == LINEAR and self.trail_sign == a


def vertex_class_from_profile(p: ReachProfile, v: str, a: Sign) -> VertexClass:
    plus, minus = v in p.any(PLUS), v in p.any(MINUS)
    if plus and minus:
        trail, tsign = ABSOLUTE, None
    elif plus:
        trail, tsign = LINEAR, PLUS
    elif minus:
        trail, tsign = LINEAR, MINUS
    else:
        trail, tsign = NEITHER, None
    if v in p.R(a, -a):
        strict = STRONG if v in p.R(-a, -a) else SUBLINEAR
    else:
        strict = NEITHER
    return VertexClass(v, trail, tsign, strict, a)


def classify_vertex(rg: RootedGraph, v: str) -> VertexClass:
    rg.graph.require_vertices([v])
    return vertex_class_from_profile(reach_profile(rg.graph, rg.root), v, rg.sign)


def vertex_table(rg: RootedGraph, profile: ReachProfile | None = None) -> dict[str, VertexClass]:
    p = profile or reach_profile(rg.graph, rg.root)
    return {v: vertex_class_from_profile(p, v, rg.sign) for v in rg.graph.vertices}


# ---------------------------------------------------------------------------
# Bitset predicates
# ---------------------------------------------------------------------------


def _k(a: int, b: int) -> int:
    return 2 * a + b


def class_bits(reach: list[int], closed: list[bool], vbits: int, root: int, a: int, root_loop: bool) -> dict[str, bool]:
    """All definitional class predicates for a (sub)graph with vertex bitset ``vbits``.

    ``a`` is 0 for orientation ``+`` and 1 for ``-``; ``reach``/``closed``
    come from :meth:`Compiled.reach` restricted to the subgraph's edges.
    """
    na = a ^ 1
    rbit = 1 << root
    r_main = reach[_k(a, na)]
    r_neg = reach[_k(na, na)]
    any_a = reach[_k(a, 0)] | reach[_k(a, 1)]
    any_na = reach[_k(na, 0)] | reach[_k(na, 1)]
    radial = vbits & ~r_main == 0
    semiradial = vbits & ~any_a == 0
    neg_closed = closed[_k(na, na)]
    return {
        "radial": radial,
        "semiradial": semiradial,
        "absolute-semiradial": semiradial and vbits & ~any_na == 0,
        "strong-radial": radial and neg_closed and vbits & ~r_neg == 0,
        "almost-strong-radial": radial and not neg_closed and (vbits & ~rbit) & ~r_neg == 0,
        "linear-semiradial": (
            semiradial
            and not root_loop
            and any_na & vbits == rbit
            and not closed[_k(na, 0)]
            and not closed[_k(na, 1)]
        ),
        "sublinear-radial": radial and r_neg & vbits == 0,
        "strong-root": neg_closed,
    }


def graph_class_bits(comp: Compiled, root: str, a: Sign, mask: int | None = None, vbits: int | None = None) -> dict[str, bool]:
    """:func:`class_bits` for the subgraph of ``comp`` given by an edge mask."""
    ri = comp.index[root]
    if mask is None:
        mask = comp.full_mask
        if vbits is None:
            vbits = comp.all_vertices
    if vbits is None:
        vbits = comp.incident_vertices(mask) | (1 << ri)
    reach, closed = comp.reach(ri, mask)
    root_loop = any(mask >> i & 1 and u == ri and v == ri for i, (u, _, v, _) in enumerate(comp.ends))
    return class_bits(reach, closed, vbits, ri, 0 if a is PLUS else 1, root_loop)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphClassReport:
    radial: bool
    semiradial: bool
    absolute_semiradial: bool
    strong_radial: bool
    almost_strong_radial: bool
    linear_semiradial: bool
    sublinear_radial: bool
    sharp: bool
    round: bool
    triplex: bool
    root_kind: str

    def to_json(self) -> dict:
        return {k.replace("_", "-"): v for k, v in asdict(self).items()}

    def has(self, name: str) -> bool:
        """Membership by CLI/generator class name."""
        return CLASS_TESTS[name](self)


CLASS_TESTS = {
    "radial": lambda c: c.radial,
    "semiradial": lambda c: c.semiradial,
    "absolute-semiradial": lambda c: c.absolute_semiradial,
    "strong-radial": lambda c: c.strong_radial,
    "almost-strong-radial": lambda c: c.almost_strong_radial,
    "round-radial": lambda c: c.round,
    "linear-semiradial": lambda c: c.linear_semiradial,
    "sublinear-radial": lambda c: c.sublinear_radial,
    "sharp-semiradial": lambda c: c.sharp,
    "radial-strong-root": lambda c: c.radial and c.root_kind == STRONG,
    "radial-sublinear-root": lambda c: c.root_kind == SUBLINEAR,
    "triplex": lambda c: c.triplex,
}


def root_kind_from_profile(p: ReachProfile, graph: BidirectedGraph, a: Sign) -> str:
    if p.closed_over(-a, -a):
        return STRONG
    if all(v in p.R(a, -a) for v in graph.vertices):
        return SUBLINEAR
    return NOT_RADIAL


def root_kind(rg: RootedGraph) -> str:
    return root_kind_from_profile(reach_profile(rg.graph, rg.root), rg.graph, rg.sign)


def basic_classes(rg: RootedGraph) -> dict[str, bool]:
    """The predicates that need no ground computation."""
    comp = compiled(rg.graph)
    return graph_class_bits(comp, rg.root, rg.sign)


def profile_class_bits(rg: RootedGraph, p: ReachProfile, a: Sign | None = None) -> dict[str, bool]:
    """:func:`class_bits` read off an already computed profile (engine or oracle)."""
    a = rg.sign if a is None else a
    comp = compiled(rg.graph)
    reach = [comp.vset_of(p.R(x, y)) for x in (PLUS, MINUS) for y in (PLUS, MINUS)]
    closed = [p.closed_over(x, y) for x in (PLUS, MINUS) for y in (PLUS, MINUS)]
    root_loop = bool(rg.graph.loops_at(rg.root))
    return class_bits(reach, closed, comp.all_vertices, comp.index[rg.root], 0 if a is PLUS else 1, root_loop)


def is_sharp(rg: RootedGraph, profile: ReachProfile | None = None) -> bool:
    g, r, a = rg.graph, rg.root, rg.sign
    p = profile or reach_profile(g, r)
    if not all(v in p.any(a) for v in g.vertices):
        return False
    if g.loops_at(r):
        return False
    return all(vertex_class_from_profile(p, v, a).is_linear(a) for v in g.neighbors(r))


def is_round(rg: RootedGraph, profile: ReachProfile | None = None) -> bool:
    g, r, a = rg.graph, rg.root, rg.sign
    p = profile or reach_profile(g, r)
    if root_kind_from_profile(p, g, a) != SUBLINEAR:
        return False
    _, nbrs = signed_cut(g, [r], -a)
    return all(v in p.R(-a, -a) for v in nbrs)


def is_triplex(rg: RootedGraph) -> bool:
    if root_kind(rg) != SUBLINEAR:
        return False
    from .grounds import ground

    return ground(rg, "extended").graph == rg.graph


def class_report(rg: RootedGraph, profile: ReachProfile | None = None) -> GraphClassReport:
    """Every class predicate; pass ``profile`` to evaluate against another reach computation."""
    g, r, a = rg.graph, rg.root, rg.sign
    p = profile or reach_profile(g, r)
    if profile is None:
        bits = basic_classes(rg)
        flipped = graph_class_bits(compiled(g), r, -a)
    else:
        bits = profile_class_bits(rg, p)
        flipped = profile_class_bits(rg, p, -a)
    kind = root_kind_from_profile(p, g, a)
    return GraphClassReport(
        radial=bits["radial"],
        semiradial=bits["semiradial"],
        absolute_semiradial=bits["absolute-semiradial"] and flipped["semiradial"],
        strong_radial=bits["strong-radial"],
        almost_strong_radial=bits["almost-strong-radial"],
        linear_semiradial=bits["linear-semiradial"],
        sublinear_radial=bits["sublinear-radial"],
        sharp=is_sharp(rg, p),
        round=is_round(rg, p),
        triplex=kind == SUBLINEAR and is_triplex(rg),
        root_kind=kind,
    )


__all__ = [
    "ABSOLUTE",
    "LINEAR",
    "STRONG",
    "SUBLINEAR",
    "NEITHER",
    "NOT_RADIAL",
    "VertexClass",
    "GraphClassReport",
    "CLASS_TESTS",
    "classify_vertex",
    "vertex_table",
    "class_report",
    "root_kind",
    "is_sharp",
    "is_round",
    "is_triplex",
    "class_bits",
    "graph_class_bits",
    "profile_class_bits",
]
