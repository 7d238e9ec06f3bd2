import pytest
from hypothesis import given
from hypothesis import strategies as st

from radials.bdg import BDGParseError, emit_bdg, parse_bdg
from radials.fixtures import F1, F2, F3, F6
from radials.graph import (
    MINUS,
    PLUS,
    BidirectedGraph,
    Edge,
    GraphError,
    RootedGraph,
    add_edges,
    contract,
    delete_edges,
    gluing_sum,
    neighborhood,
    signed_cut,
    union,
)
from radials.iso import are_isomorphic, find_isomorphism
from strategies import graphs, rooted_graphs


def test_sign_negation_is_involution():
    assert -PLUS == MINUS and -(-PLUS) == PLUS


def test_signed_cut_f2():
    assert signed_cut(F2(), {"r"}, MINUS) == (frozenset({"e1", "e2"}), frozenset({"a"}))
    assert signed_cut(F2(), {"r"}, PLUS) == (frozenset(), frozenset())


def test_signed_cut_rejects_unknown_vertex():
    with pytest.raises(GraphError):
        signed_cut(F2(), {"zz"}, PLUS)


def test_contract_f3():
    g, name = contract(F3(), {"r", "a"}, "x")
    assert g.vertex_set == {"x", "b"}
    assert [(e.id, e.u, e.su, e.v, e.sv) for e in g.edges] == [("e2", "b", PLUS, "x", MINUS)]


def test_contract_drops_arising_loops():
    g, name = contract(F2(), {"r", "a"})
    assert len(g) == 1 and g.n_edges == 0


def test_gluing_sum_example():
    outer = F6().renamed({"r": "s"})
    inner = F1().renamed({"a": "aH"}, {"e1": "e1"})
    hat = gluing_sum(outer, "s", inner, {"aH"}, {"h3": "aH"})
    assert len(hat) == 4
    h3 = hat.edge("h3")
    assert (h3.u, h3.su, h3.v, h3.sv) == ("aH", MINUS, "p", PLUS)
    assert hat.edge_ids == {"e1", "h1", "h2", "h3"}


def test_gluing_loop_takes_ordered_pair():
    g = BidirectedGraph(["s"], [Edge("l", "s", PLUS, "s", MINUS)])
    h = BidirectedGraph(["t1", "t2"])
    hat = gluing_sum(g, "s", h, {"t1", "t2"}, {"l": ("t1", "t2")})
    e = hat.edge("l")
    assert (e.u, e.su, e.v, e.sv) == ("t1", PLUS, "t2", MINUS)


def test_gluing_rejects_target_outside():
    g = BidirectedGraph(["s", "x"], [Edge("f", "s", PLUS, "x", PLUS)])
    with pytest.raises(GraphError):
        gluing_sum(g, "s", BidirectedGraph(["t"]), {"t"}, {"f": "q"})


def test_add_edge_gives_f2():
    assert add_edges(F1(), [Edge("e2", "a", MINUS, "r", MINUS)]) == F2()


def test_union_of_pendants():
    other = F1().renamed({"a": "b"}, {"e1": "e9"})
    u = union(F1(), other)
    assert u.vertex_set == {"r", "a", "b"} and u.n_edges == 2


def test_isomorphism_ignores_edge_ids():
    swapped = F2().renamed({}, {"e1": "e2", "e2": "e1"})
    assert are_isomorphic(RootedGraph(F2(), "r"), RootedGraph(swapped, "r"))
    assert not are_isomorphic(RootedGraph(F1(), "r"), RootedGraph(F2(), "r"))


def test_duplicate_edge_ids_rejected():
    with pytest.raises(GraphError):
        BidirectedGraph(["r"], [Edge("e", "r", PLUS, "r", PLUS), Edge("e", "r", MINUS, "r", MINUS)])


def test_bdg_round_trip_fixture():
    text = emit_bdg(F6(), "r", PLUS)
    doc = parse_bdg(text)
    assert doc.graph == F6() and doc.root == "r" and doc.sign == PLUS
    assert emit_bdg(doc.graph, doc.root, doc.sign) == text


def test_bdg_comments_and_shells():
    doc = parse_bdg("bdg 1\n# note\nvertex r  # root\nvertex a\nedge e1 a + r -\nshell1 a\nshell2\n")
    assert doc.graph == F1() and doc.shells["shell1"] == ("a",)


@pytest.mark.parametrize(
    "text, line",
    [
        ("vertex r\n", 1),
        ("bdg 1\nvertex r\nvertex r\n", 3),
        ("bdg 1\nvertex r\nedge e r + q -\n", 3),
        ("bdg 1\nvertex r\nedge e r * r -\n", 3),
        ("bdg 1\nvertex r\nnode r\n", 3),
    ],
)
def test_bdg_errors_carry_line_numbers(text, line):
    with pytest.raises(BDGParseError) as info:
        parse_bdg(text)
    assert info.value.lineno == line


@given(graphs())
def test_bdg_round_trip_property(g):
    assert parse_bdg(emit_bdg(g)).graph == g


@given(graphs(), st.data())
def test_signed_cuts_partition_the_cut(g, data):
    s = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1))
    plus, _ = signed_cut(g, s, PLUS)
    minus, _ = signed_cut(g, s, MINUS)
    crossing = {e.id for e in g.edges if (e.u in s) != (e.v in s)}
    assert plus | minus == crossing and not plus & minus
    assert neighborhood(g, s) == {e.v if e.u in s else e.u for e in g.edges if e.id in crossing}


@given(graphs(), st.data())
def test_delete_then_add_restores(g, data):
    if not g.edges:
        return
    e = data.draw(st.sampled_from(g.edges))
    assert add_edges(delete_edges(g, [e.id]), [e]) == g


@given(rooted_graphs(), st.data())
def test_relabelling_is_an_isomorphism(rg, data):
    names = [v for v in rg.graph.vertices if v != "r"]
    perm = data.draw(st.permutations(names))
    vmap = dict(zip(names, [f"w{p}" for p in perm]))
    other = RootedGraph(rg.graph.renamed(vmap), "r", rg.sign)
    assert find_isomorphism(rg, other) is not None
