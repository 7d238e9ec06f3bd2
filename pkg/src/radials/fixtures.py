"""Small canonical graphs used throughout the tests and docs (root ``r``, sign ``+``)."""

from __future__ import annotations

from .graph import MINUS, PLUS, BidirectedGraph, Edge, RootedGraph


def _g(vertices, *edges) -> BidirectedGraph:
    return BidirectedGraph(vertices, [Edge(*e) for e in edges])


def F0() -> BidirectedGraph:
    return _g(["r"])


def F1() -> BidirectedGraph:
    return _g(["r", "a"], ("e1", "a", PLUS, "r", MINUS))


def F2() -> BidirectedGraph:
    return _g(["r", "a"], ("e1", "a", PLUS, "r", MINUS), ("e2", "a", MINUS, "r", MINUS))


def F3() -> BidirectedGraph:
    return _g(["r", "a", "b"], ("e1", "a", PLUS, "r", MINUS), ("e2", "b", PLUS, "a", MINUS))


def F6() -> BidirectedGraph:
    return _g(
        ["r", "p", "a"],
        ("h1", "a", PLUS, "p", MINUS),
        ("h2", "a", MINUS, "p", MINUS),
        ("h3", "r", MINUS, "p", PLUS),
    )


def F7() -> BidirectedGraph:
    return _g(
        ["r", "x", "y"],
        ("e", "x", PLUS, "r", MINUS),
        ("t1", "x", MINUS, "y", PLUS),
        ("t2", "x", MINUS, "y", MINUS),
    )


FIXTURES = {"F0": F0, "F1": F1, "F2": F2, "F3": F3, "F6": F6, "F7": F7}


def rooted(name: str) -> RootedGraph:
    return RootedGraph(FIXTURES[name](), "r", PLUS)
