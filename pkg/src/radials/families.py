"""Instance families: every tiny bidirected multigraph, and seeded random graphs."""

from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .graph import MINUS, PLUS, SIGNS, BidirectedGraph, Edge, RootedGraph, Sign

TINY_NAMES = ("r", "a", "b", "c", "d", "f")


def edge_types(vertices: tuple[str, ...]) -> list[tuple[str, Sign, str, Sign]]:
    """Every distinguishable edge shape on ``vertices`` (loop sign pairs unordered)."""
    out = []
    for u, v in combinations(vertices, 2):
        for su in SIGNS:
            for sv in SIGNS:
                out.append((u, su, v, sv))
    for v in vertices:
        for su, sv in ((PLUS, PLUS), (PLUS, MINUS), (MINUS, MINUS)):
            out.append((v, su, v, sv))
    return out


def tiny_graphs(max_vertices: int = 3, max_edges: int = 3) -> Iterator[BidirectedGraph]:
    """All labelled multigraphs on ``r, a, b, ...`` (up to ``max_vertices``) with at most ``max_edges`` edges."""
    for n in range(1, max_vertices + 1):
        vs = TINY_NAMES[:n]
        types = edge_types(vs)
        for k in range(max_edges + 1):
            for combo in combinations_with_replacement(range(len(types)), k):
                edges = [Edge(f"e{i + 1}", *types[t]) for i, t in enumerate(combo)]
                yield BidirectedGraph(vs, edges)


def tiny_rooted(max_vertices: int = 3, max_edges: int = 3, signs=SIGNS) -> Iterator[RootedGraph]:
    for g in tiny_graphs(max_vertices, max_edges):
        for a in signs:
            yield RootedGraph(g, "r", a)


def random_graph(
    rng: random.Random,
    max_vertices: int = 6,
    max_edges: int = 8,
    loop_prob: float = 0.15,
    min_vertices: int = 1,
) -> BidirectedGraph:
    n = rng.randint(min_vertices, max_vertices)
    vs = ["r"] + [f"v{i}" for i in range(1, n)]
    m = rng.randint(0, max_edges)
    edges = []
    for i in range(m):
        u = rng.choice(vs)
        v = u if (n == 1 or rng.random() < loop_prob) else rng.choice([x for x in vs if x != u])
        edges.append(Edge(f"e{i + 1}", u, rng.choice(SIGNS), v, rng.choice(SIGNS)))
    return BidirectedGraph(vs, edges)


def random_rooted(rng: random.Random, max_vertices: int = 6, max_edges: int = 8) -> RootedGraph:
    g = random_graph(rng, max_vertices, max_edges)
    return RootedGraph(g, "r", rng.choice(SIGNS))


def random_connected_graph(rng: random.Random, n: int, extra_edges: int, loop_prob: float = 0.1) -> BidirectedGraph:
    """Random tree on ``n`` vertices plus ``extra_edges`` random edges, random signs."""
    vs = ["r"] + [f"v{i}" for i in range(1, n)]
    edges = []
    for i in range(1, n):
        u = vs[i]
        v = vs[rng.randrange(i)]
        edges.append(Edge(f"e{len(edges) + 1}", u, rng.choice(SIGNS), v, rng.choice(SIGNS)))
    for _ in range(extra_edges):
        u = rng.choice(vs)
        v = u if rng.random() < loop_prob else rng.choice(vs)
        edges.append(Edge(f"e{len(edges) + 1}", u, rng.choice(SIGNS), v, rng.choice(SIGNS)))
    return BidirectedGraph(vs, edges)


__all__ = [
    "edge_types",
    "tiny_graphs",
    "tiny_rooted",
    "random_graph",
    "random_rooted",
    "random_connected_graph",
]
