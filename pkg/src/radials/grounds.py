"""Grounds: maximum subgraphs with a principal-class property.

Three independent computations are offered:

``peel`` (default)
    Restrict to the vertices that can possibly belong (absolute, strong,
    linear or sublinear in G, as the kind requires), take the induced
    subgraph and repeatedly drop vertices that fail the reach requirement
    inside the current subgraph.  Each kind's property is monotone under
    adding edges on the restricted vertex set, so the fixed point is the
    maximum.
``accretion``
    Grow from the root by diears (absolute, strong, almost strong) or by
    internal edges and pendant ditrails (linear, extended), accepting a
    piece only if the property still holds.
``exact``
    Enumerate every edge subset of the restricted candidate set, keep the
    members and return their union (which must itself be a member).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .classify import (
    NOT_RADIAL,
    STRONG,
    SUBLINEAR,
    class_bits,
    root_kind,
)
from .ditrail import Compiled, compiled, iter_ditrails
from .ears import iter_diears
from .graph import MINUS, PLUS, BidirectedGraph, GraphError, RootedGraph, Sign

ABSOLUTE = "absolute"
LINEAR = "linear"
STRONG_KIND = "strong"
ALMOST_STRONG = "almost-strong"
EXTENDED = "extended"
KINDS = (ABSOLUTE, LINEAR, STRONG_KIND, ALMOST_STRONG, EXTENDED)
METHODS = ("peel", "accretion", "exact")

EXACT_MAX_EDGES = 10


class GroundError(GraphError):
    """The rooted graph is outside the class a ground kind is defined for."""


class GuardError(RuntimeError):
    """An exhaustive search was asked to run above its size bound."""


@dataclass(frozen=True)
class Ground:
    kind: str
    graph: BidirectedGraph
    root: str
    sign: Sign
    shell1: frozenset[str] = field(default_factory=frozenset)
    shell2: frozenset[str] = field(default_factory=frozenset)

    @property
    def rooted(self) -> RootedGraph:
        return RootedGraph(self.graph, self.root, self.sign)

    @property
    def is_trivial(self) -> bool:
        return len(self.graph) == 1 and self.graph.n_edges == 0

    @property
    def shell(self) -> frozenset[str]:
        return self.shell1 | self.shell2

    def shells_dict(self) -> dict[str, tuple[str, ...]]:
        if self.kind != EXTENDED:
            return {}
        return {"shell1": tuple(sorted(self.shell1)), "shell2": tuple(sorted(self.shell2))}

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "vertices": list(self.graph.vertices),
            "edges": sorted(self.graph.edge_ids),
        }
        if self.kind == EXTENDED:
            out["shell1"] = sorted(self.shell1)
            out["shell2"] = sorted(self.shell2)
        return out


# ---------------------------------------------------------------------------
# Preconditions and per-vertex eligibility
# ---------------------------------------------------------------------------


def check_precondition(rg: RootedGraph, kind: str) -> None:
    if kind not in KINDS:
        raise GraphError(f"unknown ground kind {kind!r}")
    comp = compiled(rg.graph)
    ri = comp.index[rg.root]
    a = _ai(rg.sign)
    reach, closed = comp.reach(ri)
    bits = class_bits(reach, closed, comp.all_vertices, ri, a, False)
    if kind in (ABSOLUTE, LINEAR):
        if not bits["semiradial"]:
            raise GroundError(f"{kind} ground needs an {rg.sign}-semiradial")
        return
    if not bits["radial"]:
        raise GroundError(f"{kind} ground needs an {rg.sign}-radial")
    rk = root_kind(rg)
    if kind == STRONG_KIND and rk != STRONG:
        raise GroundError("strong ground needs a strong root")
    if kind in (ALMOST_STRONG, EXTENDED) and rk != SUBLINEAR:
        raise GroundError(f"{kind} ground needs a sublinear root")


def _ai(a: Sign) -> int:
    return 0 if a is PLUS else 1


def _eligible(comp: Compiled, ri: int, a: int, kind: str, base_vbits: int = 0) -> int:
    """Vertex bitset that any member subgraph must live in (the root included)."""
    reach, _ = comp.reach(ri)
    na = a ^ 1
    any_a = reach[2 * a] | reach[2 * a + 1]
    any_na = reach[2 * na] | reach[2 * na + 1]
    main = reach[2 * a + na]
    neg = reach[2 * na + na]
    rbit = 1 << ri
    if kind == ABSOLUTE:
        vb = any_a & any_na
    elif kind == LINEAR:
        vb = any_a & ~any_na
    elif kind in (STRONG_KIND, ALMOST_STRONG):
        vb = main & neg
    else:  # extended: the almost strong ground plus sublinear vertices
        vb = base_vbits | (main & ~neg)
    return (vb | rbit) & comp.all_vertices


def _induced_mask(comp: Compiled, vbits: int, drop_root_loops_at: int | None = None) -> int:
    m = 0
    for i, (u, _, v, _) in enumerate(comp.ends):
        if vbits >> u & 1 and vbits >> v & 1:
            if drop_root_loops_at is not None and u == v == drop_root_loops_at:
                continue
            m |= 1 << i
    return m


def _requirement(comp: Compiled, ri: int, a: int, kind: str) -> Callable[[list[int], list[bool]], int]:
    """Bitset of vertices meeting the kind's per-vertex reach demand inside a subgraph."""
    na = a ^ 1
    rbit = 1 << ri

    if kind == ABSOLUTE:
        return lambda reach, closed: (reach[2 * a] | reach[2 * a + 1]) & (reach[2 * na] | reach[2 * na + 1])
    if kind == LINEAR:
        return lambda reach, closed: reach[2 * a] | reach[2 * a + 1]
    if kind in (STRONG_KIND, ALMOST_STRONG):
        # the root's strict demand is settled by the root kind, not by peeling
        return lambda reach, closed: reach[2 * a + na] & (reach[2 * na + na] | rbit)
    return lambda reach, closed: reach[2 * a + na]


# ---------------------------------------------------------------------------
# Peeling
# ---------------------------------------------------------------------------


def _peel(comp: Compiled, ri: int, a: int, kind: str, base_vbits: int = 0) -> tuple[int, int]:
    vb = _eligible(comp, ri, a, kind, base_vbits)
    need = _requirement(comp, ri, a, kind)
    drop = ri if kind == LINEAR else None
    while True:
        mask = _induced_mask(comp, vb, drop)
        reach, closed = comp.reach(ri, mask)
        keep = vb & need(reach, closed)
        keep |= 1 << ri
        if keep == vb:
            return vb, mask
        vb = keep


def _bits_to_graph(comp: Compiled, vb: int, mask: int) -> BidirectedGraph:
    g = comp.graph
    return g.subgraph(comp.names_of(vb), comp.edges_of(mask))


def _shells(comp: Compiled, ri: int, a: int, h_vbits: int, i_vbits: int, i_mask: int) -> tuple[int, int]:
    shell = i_vbits & ~h_vbits
    blocked = h_vbits & ~(1 << ri)
    avoid = i_mask & ~_touching(comp, blocked)
    reach, _ = comp.reach(ri, avoid)
    s1 = shell & reach[2 * a + (a ^ 1)]
    return s1, shell & ~s1


def _touching(comp: Compiled, vbits: int) -> int:
    m = 0
    for i, (u, _, v, _) in enumerate(comp.ends):
        if vbits >> u & 1 or vbits >> v & 1:
            m |= 1 << i
    return m


def _finish(comp: Compiled, rg: RootedGraph, kind: str, vb: int, mask: int, h_vbits: int = 0) -> Ground:
    ri, a = comp.index[rg.root], _ai(rg.sign)
    s1 = s2 = frozenset()
    if kind == EXTENDED:
        b1, b2 = _shells(comp, ri, a, h_vbits, vb, mask)
        s1, s2 = comp.names_of(b1), comp.names_of(b2)
    return Ground(kind, _bits_to_graph(comp, vb, mask), rg.root, rg.sign, s1, s2)


def ground(rg: RootedGraph, kind: str, method: str = "peel", max_edges: int = EXACT_MAX_EDGES) -> Ground:
    """The ``kind`` ground of ``rg`` (see the module docstring for methods)."""
    check_precondition(rg, kind)
    if method == "exact":
        return exact_ground(rg, kind, max_edges)
    if method == "accretion":
        return accretion_ground(rg, kind)
    if method != "peel":
        raise GraphError(f"unknown ground method {method!r}")
    comp = compiled(rg.graph)
    ri, a = comp.index[rg.root], _ai(rg.sign)
    h_vbits = 0
    if kind == EXTENDED:
        h_vbits, _ = _peel(comp, ri, a, ALMOST_STRONG)
    vb, mask = _peel(comp, ri, a, kind, h_vbits)
    return _finish(comp, rg, kind, vb, mask, h_vbits)


def shells(rg: RootedGraph) -> tuple[frozenset[str], frozenset[str]]:
    g = ground(rg, EXTENDED)
    return g.shell1, g.shell2


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------


def _member(comp: Compiled, ri: int, a: int, kind: str, mask: int, eligible: int, base_mask: int) -> tuple[bool, int]:
    vb = comp.incident_vertices(mask) | (1 << ri)
    if vb & ~eligible:
        return False, vb
    reach, closed = comp.reach(ri, mask)
    root_loop = any(mask >> i & 1 and u == ri and v == ri for i, (u, _, v, _) in enumerate(comp.ends))
    bits = class_bits(reach, closed, vb, ri, a, root_loop)
    if kind == ABSOLUTE:
        return bits["absolute-semiradial"], vb
    if kind == LINEAR:
        return bits["linear-semiradial"], vb
    if kind == STRONG_KIND:
        return bits["strong-radial"], vb
    if kind == ALMOST_STRONG:
        return bits["almost-strong-radial"], vb
    return bits["radial"] and mask & base_mask == base_mask, vb


def exact_ground(rg: RootedGraph, kind: str, max_edges: int = EXACT_MAX_EDGES) -> Ground:
    """Maximum member subgraph by enumerating edge subsets (the reference answer).

    Only edges between vertices of the right class in G are enumerated;
    membership in every kind forces its vertices into that class.  The size
    guard applies to this candidate edge set.
    """
    check_precondition(rg, kind)
    comp = compiled(rg.graph)
    ri, a = comp.index[rg.root], _ai(rg.sign)
    base_mask = 0
    h_vbits = 0
    if kind == EXTENDED:
        h = exact_ground(rg, ALMOST_STRONG, max_edges)
        base_mask = comp.mask_of(h.graph.edge_ids)
        h_vbits = comp.vset_of(h.graph.vertices)
    eligible = _eligible(comp, ri, a, kind, h_vbits)
    cand = _induced_mask(comp, eligible)
    free = cand & ~base_mask
    n = bin(free).count("1")
    if n > max_edges:
        raise GuardError(f"exact ground refuses {n} candidate edges (bound {max_edges})")
    best_mask, best_vb = 0, 1 << ri
    found = False
    for sub in _submasks(free):
        mask = sub | base_mask
        ok, vb = _member(comp, ri, a, kind, mask, eligible, base_mask)
        if ok:
            found = True
            best_mask |= mask
            best_vb |= vb
    if not found:
        raise GroundError(f"no {kind} subgraph exists")
    ok, vb = _member(comp, ri, a, kind, best_mask, eligible, base_mask)
    if not ok or vb != best_vb:
        raise AssertionError(f"union of {kind} members is not a member; maximum does not exist")
    return _finish(comp, rg, kind, best_vb, best_mask, h_vbits)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------------------------------------------------------------------------
# Accretion
# ---------------------------------------------------------------------------


def accretion_ground(rg: RootedGraph, kind: str) -> Ground:
    """Grow the ground piece by piece from the root (or from the almost strong ground)."""
    check_precondition(rg, kind)
    g, r = rg.graph, rg.root
    comp = compiled(g)
    ri, a = comp.index[r], _ai(rg.sign)
    eligible = _eligible(comp, ri, a, kind)

    def ok(h: BidirectedGraph, base_mask: int = 0) -> bool:
        m = comp.mask_of(h.edge_ids)
        vb = comp.vset_of(h.vertices)
        member, got = _member(comp, ri, a, kind, m, eligible if kind != EXTENDED else ext_eligible, base_mask)
        return member and got == vb

    h = BidirectedGraph([r])
    h_vbits = 0
    ext_eligible = 0
    if kind == STRONG_KIND:
        neg = -rg.sign
        first = next(iter_diears(g, h, kind="simple", sign_pair=(neg, neg)), None)
        if first is None:  # pragma: no cover - excluded by the precondition
            raise GroundError("no simple closed diear at the root")
        h = _grow(g, h, first.walk.vertices, first.walk.edges)
    if kind in (ABSOLUTE, STRONG_KIND, ALMOST_STRONG):
        return _finish(comp, rg, kind, *_bits_of(comp, _accrete_ears(g, h, ok)))
    if kind == EXTENDED:
        base = accretion_ground(rg, ALMOST_STRONG)
        h = base.graph
        h_vbits = comp.vset_of(h.vertices)
        ext_eligible = _eligible(comp, ri, a, EXTENDED, h_vbits)
        base_mask = comp.mask_of(h.edge_ids)
        grown = _accrete_pendants(g, h, lambda x: ok(x, base_mask), ext_eligible, comp)
        vb, mask = _bits_of(comp, grown)
        return _finish(comp, rg, kind, vb, mask, h_vbits)
    grown = _accrete_pendants(g, h, ok, eligible, comp)
    return _finish(comp, rg, kind, *_bits_of(comp, grown))


def _bits_of(comp: Compiled, h: BidirectedGraph) -> tuple[int, int]:
    return comp.vset_of(h.vertices), comp.mask_of(h.edge_ids)


def _grow(g: BidirectedGraph, h: BidirectedGraph, vertices, edges) -> BidirectedGraph:
    return g.subgraph(h.vertex_set | set(vertices), h.edge_ids | set(edges))


def _accrete_ears(g: BidirectedGraph, h: BidirectedGraph, ok) -> BidirectedGraph:
    while True:
        for ear in iter_diears(g, h):
            cand = _grow(g, h, ear.walk.vertices, ear.walk.edges)
            if ok(cand):
                h = cand
                break
        else:
            return h


def _accrete_pendants(g: BidirectedGraph, h: BidirectedGraph, ok, eligible: int, comp: Compiled) -> BidirectedGraph:
    while True:
        grown = None
        for e in g.edges:
            if e.id not in h.edge_ids and e.u in h and e.v in h:
                cand = _grow(g, h, (), (e.id,))
                if ok(cand):
                    grown = cand
                    break
        if grown is None:
            for cand in _pendants(g, h, eligible, comp):
                if ok(cand):
                    grown = cand
                    break
        if grown is None:
            return h
        h = grown


def _pendants(g: BidirectedGraph, h: BidirectedGraph, eligible: int, comp: Compiled) -> Iterator[BidirectedGraph]:
    outside = [v for v in g.vertices if v not in h and eligible >> comp.index[v] & 1]
    allowed = {e.id for e in g.edges if e.id not in h.edge_ids}
    for x in outside:
        for s in (PLUS, MINUS):
            for p in iter_ditrails(g, x, s, allowed):
                inner = p.vertices[:-1]
                if any(v in h for v in inner):
                    continue
                if any(not (eligible >> comp.index[v] & 1) for v in p.vertices):
                    continue
                if p.end in h:
                    yield _grow(g, h, p.vertices, p.edges)


def root_kind_or_error(rg: RootedGraph) -> str:
    rk = root_kind(rg)
    if rk == NOT_RADIAL:
        raise GroundError("not a radial")
    return rk
