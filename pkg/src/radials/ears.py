"""Diears relative to a subgraph: validation, enumeration, and the neighbor construction.

A *simple* diear is a ditrail of length at least one whose two ends lie in
the base vertex set ``S`` and whose internal vertices lie outside ``S``; it
uses no base edge.  A *scoop* diear leaves ``y`` in ``S`` over a grip edge
``yx`` (``x`` outside ``S``), walks a closed coherent walk at ``x`` outside
``S`` and returns to ``y`` over the same grip.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .ditrail import Ditrail, _orient, _step_signs, find_ditrail, validate_ditrail
from .graph import MINUS, PLUS, BidirectedGraph, GraphError, HypothesisError, Sign

SIMPLE = "simple"
SCOOP = "scoop"


@dataclass(frozen=True)
class DiEar:
    kind: str
    walk: Ditrail
    base: frozenset[str]
    grip: str | None = None

    @property
    def sign_pair(self) -> tuple[Sign, Sign]:
        return self.walk.start_sign, self.walk.end_sign  # type: ignore[return-value]

    @property
    def loop_walk(self) -> Ditrail | None:
        if self.kind != SCOOP:
            return None
        return self.walk.prefix_to(len(self.walk) - 1).suffix_from(1)

    @property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(self.walk.edges)

    @property
    def new_vertices(self) -> frozenset[str]:
        return frozenset(self.walk.vertices) - self.base

    def tokens(self) -> str:
        body = self.walk.tokens()
        return f"scoop {self.grip} {body}" if self.kind == SCOOP else body


def _base(h: BidirectedGraph | Iterable[str]) -> tuple[frozenset[str], frozenset[str]]:
    if isinstance(h, BidirectedGraph):
        return h.vertex_set, h.edge_ids
    return frozenset(h), frozenset()


def validate_diear(g: BidirectedGraph, h: BidirectedGraph, ear: DiEar) -> bool:
    """True iff ``ear`` is a diear of ``g`` relative to ``h``."""
    s, base_edges = h.vertex_set, h.edge_ids
    g.require_vertices(s)
    w = ear.walk
    g.require_vertices(w.vertices)
    for e in w.edges:
        g.edge(e)
    if len(w) < 1 or w.start not in s or w.end not in s:
        return False
    if any(e in base_edges for e in w.edges):
        return False
    signs = w.signs if w.signs else None
    if ear.kind == SIMPLE:
        if any(v in s for v in w.vertices[1:-1]):
            return False
        return validate_ditrail(g, w)
    if ear.kind != SCOOP or ear.grip is None:
        return False
    grip = g.edge(ear.grip)
    if grip.is_loop or len(w) < 3 or w.edges[0] != ear.grip or w.edges[-1] != ear.grip:
        return False
    if w.start != w.end or w.vertices[1] != w.vertices[-2]:
        return False
    inner = w.edges[1:-1]
    if ear.grip in inner or len(set(inner)) != len(inner):
        return False
    if any(v in s for v in w.vertices[1:-1]):
        return False
    recs = [g.edge(e) for e in w.edges]
    if signs is not None:
        for i, rec in enumerate(recs):
            if signs[i] not in _step_signs(rec, w.vertices[i], w.vertices[i + 1]):
                return False
        return all(signs[i][1] != signs[i + 1][0] for i in range(len(signs) - 1))
    return _orient(recs, w.vertices) is not None


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _steps(g: BidirectedGraph, v: str, dep: Sign):
    """Moves ``(edge, next vertex, (dep, arr))`` leaving ``v`` with sign ``dep``."""
    for e in g.incident[v]:
        if e.is_loop:
            for s1, s2 in dict.fromkeys([(e.su, e.sv), (e.sv, e.su)]):
                if s1 == dep:
                    yield e, v, (s1, s2)
        elif e.sign_at(v) == dep:
            w, sw = e.other(v)
            yield e, w, (dep, sw)


def iter_diears(
    g: BidirectedGraph,
    h: BidirectedGraph | Iterable[str],
    kind: str | None = None,
    sign_pair: tuple[Sign, Sign] | None = None,
    grip: str | None = None,
    forbidden_vertices: Iterable[str] = (),
    allowed_edges: Iterable[str] | None = None,
) -> Iterator[DiEar]:
    """Every diear relative to ``h`` (exponential; desk scale only).

    Order is deterministic: by start vertex, then first edge id, then the
    depth-first order of continuations.
    """
    s, base_edges = _base(h)
    g.require_vertices(s)
    banned = frozenset(forbidden_vertices)
    ok = None if allowed_edges is None else frozenset(allowed_edges)

    def usable(eid: str) -> bool:
        return eid not in base_edges and (ok is None or eid in ok)

    starts = sorted(s)
    if grip is not None:
        ge = g.edge(grip)
        if ge.is_loop:
            return
        starts = [v for v in (ge.u, ge.v) if v in s]
        if kind is None:
            kind = SCOOP
    for y in starts:
        for first in (PLUS, MINUS):
            if sign_pair is not None and first != sign_pair[0]:
                continue
            for e, x, sg in _steps(g, y, first):
                if not usable(e.id):
                    continue
                if kind in (None, SIMPLE) and grip is None:
                    yield from _simple_from(g, s, usable, banned, y, e, x, sg, sign_pair)
                if kind in (None, SCOOP) and not e.is_loop and x not in s and x not in banned:
                    if grip is None or e.id == grip:
                        yield from _scoops_from(g, s, usable, banned, y, e, x, sg, sign_pair)


def _simple_from(g, s, usable, banned, y, e0, x0, sg0, sign_pair) -> Iterator[DiEar]:
    vs = [y, x0]
    es = [e0.id]
    ss = [sg0]

    def emit():
        if sign_pair is None or ss[-1][1] == sign_pair[1]:
            return DiEar(SIMPLE, Ditrail(tuple(vs), tuple(es), tuple(ss)), frozenset(s))
        return None

    if x0 in s:
        ear = emit()
        if ear is not None:
            yield ear
        return
    if x0 in banned:
        return

    def walk(v: str, dep: Sign):
        for e, w, sg in _steps(g, v, dep):
            if e.id in es or not usable(e.id):
                continue
            if w not in s and w in banned:
                continue
            vs.append(w)
            es.append(e.id)
            ss.append(sg)
            if w in s:
                ear = emit()
                if ear is not None:
                    yield ear
            else:
                yield from walk(w, -sg[1])
            vs.pop()
            es.pop()
            ss.pop()

    yield from walk(x0, -sg0[1])


def _scoops_from(g, s, usable, banned, y, grip, x, sg0, sign_pair) -> Iterator[DiEar]:
    gy, gx = sg0  # sign of y and of x over the grip
    if sign_pair is not None and sign_pair != (gy, gy):
        return
    vs = [y, x]
    es = [grip.id]
    ss = [sg0]

    def walk(v: str, dep: Sign):
        for e, w, sg in _steps(g, v, dep):
            if e.id in es or not usable(e.id) or w in s or w in banned:
                continue
            vs.append(w)
            es.append(e.id)
            ss.append(sg)
            if w == x and sg[1] == -gx:
                yield DiEar(
                    SCOOP,
                    Ditrail(tuple(vs + [y]), tuple(es + [grip.id]), tuple(ss + [(gx, gy)])),
                    frozenset(s),
                    grip.id,
                )
            yield from walk(w, -sg[1])
            vs.pop()
            es.pop()
            ss.pop()

    yield from walk(x, -gx)


def find_diear(
    g: BidirectedGraph,
    h: BidirectedGraph | Iterable[str],
    kind: str | None = None,
    sign_pair: tuple[Sign, Sign] | None = None,
    grip: str | None = None,
    forbidden_vertices: Iterable[str] = (),
) -> DiEar | None:
    return next(iter_diears(g, h, kind, sign_pair, grip, forbidden_vertices), None)


# ---------------------------------------------------------------------------
# Neighbor construction
# ---------------------------------------------------------------------------


def ear_from_neighbor(g: BidirectedGraph, s: Iterable[str], r: str, x: str, y: str, edge: str) -> DiEar:
    """Diear through the edge ``xy`` built from a ditrail of ``x`` to ``r``.

    ``x`` lies outside ``s`` and ``y`` inside.  Let ``b`` be the sign of
    ``x`` over ``xy``; from a ``-b``-ditrail ``P`` of ``x`` to ``r``, the
    prefix of ``P`` up to its first vertex ``z`` in ``s`` either avoids
    ``xy`` (giving the simple diear ``(y, yx, x) + xPz``) or ends with it
    (giving a scoop with grip ``xy``).
    """
    ss = g.require_vertices(s)
    if r not in ss:
        raise GraphError("the root must belong to the base set")
    if x in ss or y not in ss:
        raise GraphError("need x outside and y inside the base set")
    e = g.edge(edge)
    if e.is_loop or {e.u, e.v} != {x, y}:
        raise GraphError(f"edge {edge!r} does not join {x!r} and {y!r}")
    b = e.sign_at(x)
    p = find_ditrail(g, x, r, -b)
    if p is None:
        raise HypothesisError(f"no {-b}-ditrail from {x!r} to {r!r}")
    cut = next(i for i, v in enumerate(p.vertices) if v in ss)
    prefix = p.prefix_to(cut)
    head = Ditrail((y, x), (edge,), ((e.sign_at(y), b),))
    walk = head + prefix
    if edge in prefix.edges:
        return DiEar(SCOOP, walk, ss, edge)
    return DiEar(SIMPLE, walk, ss)
