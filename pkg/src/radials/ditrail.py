"""Ditrails: sign-coherent edge-distinct walks, and reach sets built from them.

Conventions
-----------
* At every pass-through vertex the two consecutive edge ends carry opposite
  signs.  An ``(a, b)``-ditrail starts with sign ``a`` at its first vertex
  and ends with sign ``b`` at its last.
* The zero-edge ditrail at ``r`` counts as a ``(b, -b)``-ditrail for both
  ``b`` (hence as a ``b``-ditrail for both ``b``) but never as ``(b, b)``.
* A closed ditrail over ``r`` is nonempty, starts and ends at ``r``, and
  imposes no coherence between its last and first edge.

The production engine (:func:`reach_profile`) searches backwards from the
root over states (vertex, required sign, used edges) with dominance pruning.
:func:`oracle_reach_profile` enumerates every forward trail with no pruning
and is kept deliberately naive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .graph import MINUS, PLUS, SIGNS, BidirectedGraph, Edge, GraphError, Sign

SignPair = tuple[Sign, Sign]
PAIRS: tuple[SignPair, ...] = ((PLUS, PLUS), (PLUS, MINUS), (MINUS, PLUS), (MINUS, MINUS))

ORACLE_MAX_EDGES = 12


class OracleRefusal(RuntimeError):
    """The oracle's size guard was exceeded."""


def _si(s: Sign) -> int:
    return 0 if s is PLUS else 1


_SIGN_OF = (PLUS, MINUS)


# ---------------------------------------------------------------------------
# Ditrail values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ditrail:
    """Alternating walk ``v0, e1, v1, ..., ek, vk``.

    ``signs[i]`` is ``(sign of v_i over e_{i+1}, sign of v_{i+1} over
    e_{i+1})``; it disambiguates loop traversal order.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...] = ()
    signs: tuple[SignPair, ...] = ()

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def start_sign(self) -> Sign | None:
        return self.signs[0][0] if self.signs else None

    @property
    def end_sign(self) -> Sign | None:
        return self.signs[-1][1] if self.signs else None

    def reversed(self) -> "Ditrail":
        return Ditrail(
            tuple(reversed(self.vertices)),
            tuple(reversed(self.edges)),
            tuple((b, a) for a, b in reversed(self.signs)),
        )

    def __add__(self, other: "Ditrail") -> "Ditrail":
        if self.end != other.start:
            raise GraphError("ditrails do not meet")
        return Ditrail(self.vertices + other.vertices[1:], self.edges + other.edges, self.signs + other.signs)

    def prefix_to(self, index: int) -> "Ditrail":
        """Sub-ditrail ``v0 .. v_index``."""
        return Ditrail(self.vertices[: index + 1], self.edges[:index], self.signs[:index])

    def suffix_from(self, index: int) -> "Ditrail":
        return Ditrail(self.vertices[index:], self.edges[index:], self.signs[index:])

    def tokens(self) -> str:
        out = [self.vertices[0]]
        for e, v in zip(self.edges, self.vertices[1:]):
            out += [e, v]
        return " ".join(out)

    @classmethod
    def from_tokens(cls, graph: BidirectedGraph, text: str) -> "Ditrail":
        tok = text.split()
        if len(tok) % 2 != 1:
            raise GraphError("a ditrail token line alternates vertex/edge and ends on a vertex")
        return with_signs(graph, tok[0::2], tok[1::2])


def with_signs(graph: BidirectedGraph, vertices: Iterable[str], edges: Iterable[str]) -> Ditrail:
    """Attach end signs to a vertex/edge sequence, choosing loop orientations coherently.

    Raises :class:`GraphError` on dangling references; returns a walk with
    best-effort signs even when it is not coherent (validation decides).
    """
    vs, es = tuple(vertices), tuple(edges)
    if len(vs) != len(es) + 1:
        raise GraphError("vertex/edge sequence lengths do not match")
    for v in vs:
        if v not in graph:
            raise GraphError(f"unknown vertex {v!r}")
    recs = [graph.edge(e) for e in es]
    best = _orient(recs, vs)
    if best is None:
        # not coherent under any loop orientation; keep first orientation for reporting
        best = tuple(_step_signs(rec, vs[i], vs[i + 1])[0] if _step_signs(rec, vs[i], vs[i + 1]) else (PLUS, PLUS)
                     for i, rec in enumerate(recs))
    return Ditrail(vs, es, best)


def _step_signs(rec: Edge, a: str, b: str) -> list[SignPair]:
    if rec.is_loop:
        if a != rec.u or b != rec.u:
            return []
        return list(dict.fromkeys([(rec.su, rec.sv), (rec.sv, rec.su)]))
    if rec.u == a and rec.v == b:
        return [(rec.su, rec.sv)]
    if rec.v == a and rec.u == b:
        return [(rec.sv, rec.su)]
    return []


def _orient(recs: list[Edge], vs: tuple[str, ...]) -> tuple[SignPair, ...] | None:
    out: list[SignPair] = []

    def go(i: int, prev: Sign | None) -> bool:
        if i == len(recs):
            return True
        for dep, arr in _step_signs(recs[i], vs[i], vs[i + 1]):
            if prev is not None and dep == prev:
                continue
            out.append((dep, arr))
            if go(i + 1, arr):
                return True
            out.pop()
        return False

    return tuple(out) if go(0, None) else None


def validate_ditrail(graph: BidirectedGraph, p: Ditrail) -> bool:
    """True iff ``p`` is an edge-distinct, sign-coherent walk in ``graph``."""
    for v in p.vertices:
        if v not in graph:
            raise GraphError(f"unknown vertex {v!r}")
    recs = [graph.edge(e) for e in p.edges]
    if not p.vertices or len(p.vertices) != len(p.edges) + 1:
        return False
    if len(set(p.edges)) != len(p.edges):
        return False
    if p.signs:
        if len(p.signs) != len(p.edges):
            return False
        for i, rec in enumerate(recs):
            if p.signs[i] not in _step_signs(rec, p.vertices[i], p.vertices[i + 1]):
                return False
        return all(p.signs[i][1] != p.signs[i + 1][0] for i in range(len(p.signs) - 1))
    return _orient(recs, p.vertices) is not None


# ---------------------------------------------------------------------------
# Compiled adjacency
# ---------------------------------------------------------------------------


class Compiled:
    """Integer-indexed adjacency of a graph; edges are bits of an int mask.

    ``adj[v]`` lists ``(bit, sign at v, w, sign at w)`` with signs encoded
    0 for ``+`` and 1 for ``-``; a loop with distinct signs appears twice.
    """

    def __init__(self, graph: BidirectedGraph):
        self.graph = graph
        self.names = graph.vertices
        self.index = {v: i for i, v in enumerate(self.names)}
        self.edge_names = tuple(e.id for e in graph.edges)
        self.edge_bit = {e: 1 << i for i, e in enumerate(self.edge_names)}
        self.full_mask = (1 << len(self.edge_names)) - 1
        self.all_vertices = (1 << len(self.names)) - 1
        adj: list[list[tuple[int, int, int, int]]] = [[] for _ in self.names]
        self.ends: list[tuple[int, int, int, int]] = []
        for i, e in enumerate(graph.edges):
            bit = 1 << i
            u, v = self.index[e.u], self.index[e.v]
            su, sv = _si(e.su), _si(e.sv)
            self.ends.append((u, su, v, sv))
            adj[u].append((bit, su, v, sv))
            if u != v or su != sv:
                adj[v].append((bit, sv, u, su))
        self.adj = tuple(tuple(a) for a in adj)
        self._reach_cache: dict[tuple[int, int], tuple[list[int], list[bool]]] = {}

    def mask_of(self, edge_ids: Iterable[str]) -> int:
        m = 0
        for e in edge_ids:
            m |= self.edge_bit[e]
        return m

    def vset_of(self, vertices: Iterable[str]) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index[v]
        return m

    def names_of(self, vbits: int) -> frozenset[str]:
        return frozenset(self.names[i] for i in range(len(self.names)) if vbits >> i & 1)

    def edges_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.edge_names[i] for i in range(len(self.edge_names)) if mask >> i & 1)

    def incident_vertices(self, mask: int) -> int:
        vb = 0
        for i, (u, _, v, _) in enumerate(self.ends):
            if mask >> i & 1:
                vb |= (1 << u) | (1 << v)
        return vb

    def reach(self, root: int, mask: int | None = None) -> tuple[list[int], list[bool]]:
        """Reach sets toward ``root`` inside the edge set ``mask``.

        Returns ``(reach, closed)`` with ``reach[2*a + b]`` the bitset of
        vertices having an ``(a, b)``-ditrail to the root and ``closed[2*a+b]``
        flagging nonempty closed ``(a, b)``-ditrails over the root.
        """
        if mask is None:
            mask = self.full_mask
        key = (root, mask)
        hit = self._reach_cache.get(key)
        if hit is None:
            if len(self._reach_cache) > 20000:
                self._reach_cache.clear()
            hit = self._reach_cache[key] = _reach(self.adj, root, mask)
        return hit


def _reach(adj, root: int, mask: int) -> tuple[list[int], list[bool]]:
    reach = [0, 0, 0, 0]
    closed = [False, False, False, False]
    reach[1] |= 1 << root
    reach[2] |= 1 << root
    for s0 in (0, 1):
        # Walk the reversed trail out of the root; arriving at w with sign ws
        # means w has a (ws, s0)-ditrail to the root.
        seen: dict[tuple[int, int], list[int]] = {}

        def dfs(v: int, need: int, used: int) -> None:
            for bit, sv, w, sw in adj[v]:
                if sv != need or not (bit & mask) or (bit & used):
                    continue
                reach[2 * sw + s0] |= 1 << w
                if w == root:
                    closed[2 * sw + s0] = True
                nused = used | bit
                key = (w, sw ^ 1)
                lst = seen.get(key)
                if lst is None:
                    seen[key] = [nused]
                else:
                    if any(m & ~nused == 0 for m in lst):
                        continue
                    lst[:] = [m for m in lst if nused & ~m]
                    lst.append(nused)
                dfs(w, sw ^ 1, nused)

        seen[(root, s0)] = [0]
        dfs(root, s0, 0)
    return reach, closed


@lru_cache(maxsize=4096)
def compiled(graph: BidirectedGraph) -> Compiled:
    return Compiled(graph)


# ---------------------------------------------------------------------------
# Reach profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReachProfile:
    root: str
    reach: Mapping[SignPair, frozenset[str]]
    closed: Mapping[SignPair, bool]

    def R(self, a: Sign, b: Sign) -> frozenset[str]:
        return self.reach[(a, b)]

    def any(self, a: Sign) -> frozenset[str]:
        return self.reach[(a, PLUS)] | self.reach[(a, MINUS)]

    def closed_over(self, a: Sign, b: Sign) -> bool:
        return self.closed[(a, b)]

    def _key(self):
        return (
            self.root,
            tuple(self.reach[p] for p in PAIRS),
            tuple(self.closed[p] for p in PAIRS),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReachProfile):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "reach": {f"{a}{b}": sorted(self.reach[(a, b)]) for a, b in PAIRS},
            "closed": {f"{a}{b}": self.closed[(a, b)] for a, b in PAIRS},
        }


def _profile_from_bits(comp: Compiled, root: str, reach: list[int], closed: list[bool]) -> ReachProfile:
    rr = {}
    cc = {}
    for a, b in PAIRS:
        k = 2 * _si(a) + _si(b)
        rr[(a, b)] = comp.names_of(reach[k])
        cc[(a, b)] = closed[k]
    return ReachProfile(root, rr, cc)


def reach_profile(graph: BidirectedGraph, root: str) -> ReachProfile:
    if root not in graph:
        raise GraphError(f"unknown root {root!r}")
    comp = compiled(graph)
    reach, closed = comp.reach(comp.index[root])
    return _profile_from_bits(comp, root, reach, closed)


def oracle_reach_profile(graph: BidirectedGraph, root: str, max_edges: int = ORACLE_MAX_EDGES) -> ReachProfile:
    """Reach profile by exhaustive forward enumeration of every ditrail."""
    if root not in graph:
        raise GraphError(f"unknown root {root!r}")
    if graph.n_edges > max_edges:
        raise OracleRefusal(f"oracle refuses {graph.n_edges} edges (bound {max_edges})")
    reach = {p: set() for p in PAIRS}
    closed = {p: False for p in PAIRS}
    reach[(PLUS, MINUS)].add(root)
    reach[(MINUS, PLUS)].add(root)
    for x in graph.vertices:
        for a in SIGNS:
            for arrival in _all_trail_ends(graph, x, a):
                w, b = arrival
                if w == root:
                    reach[(a, b)].add(x)
                    if x == root:
                        closed[(a, b)] = True
    return ReachProfile(root, {p: frozenset(s) for p, s in reach.items()}, closed)


def _all_trail_ends(graph: BidirectedGraph, x: str, first: Sign) -> Iterator[tuple[str, Sign]]:
    """(end vertex, end sign) of every nonempty ditrail from ``x`` starting with ``first``."""
    used: set[str] = set()

    def moves(v: str, dep: Sign):
        for e in graph.incident[v]:
            if e.id in used:
                continue
            if e.is_loop:
                for s1, s2 in {(e.su, e.sv), (e.sv, e.su)}:
                    if s1 == dep:
                        yield e, v, s2
            elif e.sign_at(v) == dep:
                w, sw = e.other(v)
                yield e, w, sw

    def walk(v: str, dep: Sign):
        for e, w, sw in list(moves(v, dep)):
            used.add(e.id)
            yield w, sw
            yield from walk(w, -sw)
            used.discard(e.id)

    yield from walk(x, first)


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------


def find_ditrail(
    graph: BidirectedGraph,
    x: str,
    target: str,
    start: Sign,
    end: Sign | None = None,
    forbidden: Iterable[str] = (),
) -> Ditrail | None:
    """Some ``(start, end)``-ditrail from ``x`` to ``target`` avoiding ``forbidden`` edges.

    ``end=None`` accepts either end sign.  For ``x == target`` the trivial
    ditrail is returned when it qualifies (``end`` is ``-start`` or
    unconstrained); otherwise a nonempty closed witness is sought.
    """
    return find_ditrail_to(graph, x, [target], start, end, forbidden)


def find_ditrail_to(
    graph: BidirectedGraph,
    x: str,
    targets: Iterable[str],
    start: Sign,
    end: Sign | None = None,
    forbidden: Iterable[str] = (),
    through: Iterable[str] | None = None,
) -> Ditrail | None:
    """Like :func:`find_ditrail` with a target set.

    With ``through`` given, every vertex of the ditrail before its last one
    must lie in ``through`` (the first vertex ``x`` included).
    """
    tset = frozenset(targets)
    for v in (x, *tset):
        if v not in graph:
            raise GraphError(f"unknown vertex {v!r}")
    if x in tset and (end is None or end == -start):
        return Ditrail((x,))
    comp = compiled(graph)
    banned = comp.mask_of(forbidden)
    mask = comp.full_mask & ~banned
    tbits = comp.vset_of(tset)
    pass_bits = comp.all_vertices if through is None else comp.vset_of(through)
    if through is not None and not pass_bits >> comp.index[x] & 1:
        return None
    want = None if end is None else _si(end)
    vstack: list[int] = [comp.index[x]]
    estack: list[int] = []
    sstack: list[SignPair] = []
    seen: dict[tuple[int, int], list[int]] = {}
    bit_index = {1 << i: i for i in range(len(comp.edge_names))}

    def dfs(v: int, need: int, used: int) -> bool:
        for bit, sv, w, sw in comp.adj[v]:
            if sv != need or not (bit & mask) or (bit & used):
                continue
            vstack.append(w)
            estack.append(bit)
            sstack.append((_SIGN_OF[sv], _SIGN_OF[sw]))
            if tbits >> w & 1 and (want is None or want == sw):
                return True
            if pass_bits >> w & 1:
                nused = used | bit
                key = (w, sw ^ 1)
                lst = seen.setdefault(key, [])
                if not any(m & ~nused == 0 for m in lst):
                    lst.append(nused)
                    if dfs(w, sw ^ 1, nused):
                        return True
            vstack.pop()
            estack.pop()
            sstack.pop()
        return False

    if not dfs(comp.index[x], _si(start), 0):
        return None
    return Ditrail(
        tuple(comp.names[i] for i in vstack),
        tuple(comp.edge_names[bit_index[b]] for b in estack),
        tuple(sstack),
    )


def iter_ditrails(
    graph: BidirectedGraph,
    x: str,
    start: Sign,
    allowed: Iterable[str] | None = None,
) -> Iterator[Ditrail]:
    """Every nonempty ditrail from ``x`` starting with sign ``start`` (exponential)."""
    ok = graph.edge_ids if allowed is None else frozenset(allowed)
    used: list[str] = []
    vs: list[str] = [x]
    ss: list[SignPair] = []

    def walk(v: str, dep: Sign):
        for e in graph.incident[v]:
            if e.id not in ok or e.id in used:
                continue
            steps = [(e.su, e.sv), (e.sv, e.su)] if e.is_loop else [(e.sign_at(v), e.other(v)[1])]
            for s1, s2 in dict.fromkeys(steps):
                if s1 != dep:
                    continue
                w = v if e.is_loop else e.other(v)[0]
                used.append(e.id)
                vs.append(w)
                ss.append((s1, s2))
                yield Ditrail(tuple(vs), tuple(used), tuple(ss))
                yield from walk(w, -s2)
                used.pop()
                vs.pop()
                ss.pop()

    yield from walk(x, start)
