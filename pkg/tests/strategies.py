"""Hypothesis strategies for small rooted bidirected graphs."""

from hypothesis import strategies as st

from radials.graph import SIGNS, BidirectedGraph, Edge, RootedGraph

signs = st.sampled_from(SIGNS)


@st.composite
def graphs(draw, max_vertices=5, max_edges=7):
    n = draw(st.integers(1, max_vertices))
    vs = ["r"] + [f"v{i}" for i in range(1, n)]
    m = draw(st.integers(0, max_edges))
    edges = []
    for i in range(m):
        u = draw(st.sampled_from(vs))
        v = draw(st.sampled_from(vs))
        edges.append(Edge(f"e{i + 1}", u, draw(signs), v, draw(signs)))
    return BidirectedGraph(vs, edges)


@st.composite
def rooted_graphs(draw, max_vertices=5, max_edges=7):
    return RootedGraph(draw(graphs(max_vertices, max_edges)), "r", draw(signs))
