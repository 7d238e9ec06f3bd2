import pytest
from hypothesis import given

from radials.classify import class_report
from radials.families import tiny_rooted
from radials.fixtures import rooted
from radials.graph import GraphError, RootedGraph, is_subgraph
from radials.grounds import (
    ABSOLUTE,
    ALMOST_STRONG,
    EXTENDED,
    KINDS,
    LINEAR,
    STRONG_KIND,
    GroundError,
    GuardError,
    check_precondition,
    exact_ground,
    ground,
    shells,
)
from strategies import rooted_graphs

# (vertices, edges, shell1, shell2), frozen from the exhaustive subgraph search
FROZEN = {
    ("F0", ABSOLUTE): ({"r"}, set(), set(), set()),
    ("F1", ABSOLUTE): ({"r"}, set(), set(), set()),
    ("F1", LINEAR): ({"r", "a"}, {"e1"}, set(), set()),
    ("F1", EXTENDED): ({"r", "a"}, {"e1"}, {"a"}, set()),
    ("F2", ABSOLUTE): ({"r", "a"}, {"e1", "e2"}, set(), set()),
    ("F2", LINEAR): ({"r"}, set(), set(), set()),
    ("F2", STRONG_KIND): ({"r", "a"}, {"e1", "e2"}, set(), set()),
    ("F3", LINEAR): ({"r", "a", "b"}, {"e1", "e2"}, set(), set()),
    ("F3", ALMOST_STRONG): ({"r"}, set(), set(), set()),
    ("F3", EXTENDED): ({"r", "a", "b"}, {"e1", "e2"}, {"a", "b"}, set()),
    ("F6", ALMOST_STRONG): ({"r", "p", "a"}, {"h1", "h2", "h3"}, set(), set()),
    ("F6", EXTENDED): ({"r", "p", "a"}, {"h1", "h2", "h3"}, set(), set()),
    ("F7", ABSOLUTE): ({"r", "x", "y"}, {"e", "t1", "t2"}, set(), set()),
    ("F7", LINEAR): ({"r"}, set(), set(), set()),
}

KIND_CLASS = {
    ABSOLUTE: "absolute-semiradial",
    LINEAR: "linear-semiradial",
    STRONG_KIND: "strong-radial",
    ALMOST_STRONG: "almost-strong-radial",
    EXTENDED: "radial",
}


@pytest.mark.parametrize("key", sorted(FROZEN), ids=lambda k: f"{k[0]}-{k[1]}")
@pytest.mark.parametrize("method", ["peel", "accretion", "exact"])
def test_fixture_grounds(key, method):
    name, kind = key
    gr = ground(rooted(name), kind, method)
    vs, es, s1, s2 = FROZEN[key]
    assert gr.graph.vertex_set == vs and gr.graph.edge_ids == es
    assert gr.shell1 == s1 and gr.shell2 == s2


def test_shells_helper():
    assert shells(rooted("F3")) == ({"a", "b"}, set())
    assert shells(rooted("F6")) == (set(), set())


@pytest.mark.parametrize(
    "name, kind",
    [("F2", ALMOST_STRONG), ("F2", EXTENDED), ("F1", STRONG_KIND)],
)
def test_preconditions(name, kind):
    with pytest.raises(GroundError):
        ground(rooted(name), kind)


def test_unknown_kind():
    with pytest.raises(GraphError):
        check_precondition(rooted("F1"), "wobbly")


def test_exact_guard():
    from radials.transform.generate import generate

    big = generate("absolute-semiradial", 8, seed=1)
    assert big.graph.n_edges > 6
    with pytest.raises(GuardError):
        exact_ground(big, ABSOLUTE, max_edges=6)


def _applicable(rg):
    for kind in KINDS:
        try:
            check_precondition(rg, kind)
        except GroundError:
            continue
        yield kind


def test_peel_matches_exact_on_tiny_family():
    for rg in tiny_rooted(3, 3):
        for kind in _applicable(rg):
            assert ground(rg, kind) == exact_ground(rg, kind), (rg, kind)


@given(rooted_graphs(max_vertices=5, max_edges=7))
def test_ground_is_a_rooted_class_member(rg):
    for kind in _applicable(rg):
        gr = ground(rg, kind)
        assert rg.root in gr.graph and is_subgraph(gr.graph, rg.graph)
        assert class_report(RootedGraph(gr.graph, rg.root, rg.sign)).has(KIND_CLASS[kind])


@given(rooted_graphs(max_vertices=5, max_edges=7))
def test_methods_agree(rg):
    for kind in _applicable(rg):
        assert ground(rg, kind, "peel") == ground(rg, kind, "accretion") == ground(rg, kind, "exact")


@given(rooted_graphs(max_vertices=5, max_edges=7))
def test_shell_partition(rg):
    if EXTENDED not in set(_applicable(rg)):
        return
    ext = ground(rg, EXTENDED)
    h = ground(rg, ALMOST_STRONG).graph.vertex_set
    assert not ext.shell1 & ext.shell2
    assert ext.graph.vertex_set == h | ext.shell1 | ext.shell2
    assert not (h & ext.shell)
