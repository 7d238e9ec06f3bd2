"""Rooted isomorphism of bidirected multigraphs by pruned backtracking."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from .graph import BidirectedGraph, Edge, RootedGraph


@dataclass(frozen=True)
class IsoWitness:
    vertex_map: dict[str, str]
    edge_map: dict[str, str]


def _end_key(e: Edge, vmap) -> tuple:
    a = (vmap(e.u), int(e.su))
    b = (vmap(e.v), int(e.sv))
    return (a, b) if a <= b else (b, a)


def _signature(g: BidirectedGraph, v: str) -> tuple:
    sig = Counter()
    for e in g.incident[v]:
        if e.is_loop:
            sig[("loop", *sorted((int(e.su), int(e.sv))))] += 1
        else:
            _, so = e.other(v)
            sig[("edge", int(e.sign_at(v)), int(so))] += 1
    return tuple(sorted(sig.items()))


def find_isomorphism(g1: RootedGraph, g2: RootedGraph) -> IsoWitness | None:
    """A root-preserving, sign-preserving isomorphism ``g1 -> g2``, if any.

    The orientation field is compared too: rooted graphs under study for
    different signs are never isomorphic.
    """
    a, b = g1.graph, g2.graph
    if g1.sign != g2.sign or len(a) != len(b) or a.n_edges != b.n_edges:
        return None
    sa = {v: _signature(a, v) for v in a.vertices}
    sb = {v: _signature(b, v) for v in b.vertices}
    if sorted(sa.values()) != sorted(sb.values()) or sa[g1.root] != sb[g2.root]:
        return None
    by_class: dict[tuple, list[str]] = defaultdict(list)
    for v in b.vertices:
        by_class[sb[v]].append(v)

    order = [g1.root] + sorted((v for v in a.vertices if v != g1.root), key=lambda v: (-len(a.incident[v]), v))
    vmap: dict[str, str] = {g1.root: g2.root}
    used = {g2.root}
    nbr_a = {v: _adj_counts(a, v) for v in a.vertices}
    nbr_b = {v: _adj_counts(b, v) for v in b.vertices}

    def consistent(v: str, w: str) -> bool:
        # every edge between v and an already-mapped vertex must have its image
        for (x, sv, sx), k in nbr_a[v].items():
            if x in vmap and x != v:
                if nbr_b[w].get((vmap[x], sv, sx), 0) != k:
                    return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_class[sa[v]]:
            if w in used or not consistent(v, w):
                continue
            vmap[v] = w
            used.add(w)
            if go(i + 1):
                return True
            del vmap[v]
            used.discard(w)
        return False

    if not consistent(g1.root, g2.root) or not go(1):
        return None
    image = Counter(_end_key(e, vmap.__getitem__) for e in a.edges)
    target = Counter(_end_key(e, lambda x: x) for e in b.edges)
    if image != target:  # pragma: no cover - guarded by the pair counts above
        return None
    pool: dict[tuple, list[str]] = defaultdict(list)
    for e in b.edges:
        pool[_end_key(e, lambda x: x)].append(e.id)
    emap = {e.id: pool[_end_key(e, vmap.__getitem__)].pop(0) for e in a.edges}
    return IsoWitness(dict(vmap), emap)


def _adj_counts(g: BidirectedGraph, v: str) -> dict[tuple, int]:
    out: Counter = Counter()
    for e in g.incident[v]:
        if e.is_loop:
            continue
        x, sx = e.other(v)
        out[(x, int(e.sign_at(v)), int(sx))] += 1
    return dict(out)


def are_isomorphic(g1: RootedGraph, g2: RootedGraph) -> bool:
    return find_isomorphism(g1, g2) is not None
