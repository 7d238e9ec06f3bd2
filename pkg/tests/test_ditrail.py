import pytest
from hypothesis import given

from radials.ditrail import (
    Ditrail,
    OracleRefusal,
    compiled,
    find_ditrail,
    find_ditrail_to,
    iter_ditrails,
    oracle_reach_profile,
    reach_profile,
    validate_ditrail,
    with_signs,
)
from radials.families import tiny_graphs
from radials.fixtures import F0, F1, F2, F3, F6, F7
from radials.graph import MINUS, PLUS, SIGNS, BidirectedGraph, Edge
from strategies import graphs

P, M = PLUS, MINUS

# reach sets R(a, b) toward r and closed flags, frozen from the brute-force oracle
FROZEN = {
    "F0": (F0, {(P, M): {"r"}, (M, P): {"r"}}, set()),
    "F1": (F1, {(P, M): {"r", "a"}, (M, P): {"r"}}, set()),
    "F2": (F2, {(P, M): {"r", "a"}, (M, P): {"r"}, (M, M): {"r", "a"}}, {(M, M)}),
    "F3": (F3, {(P, M): {"r", "a", "b"}, (M, P): {"r"}}, set()),
    "F6": (F6, {(P, M): {"r", "p", "a"}, (M, P): {"r"}, (M, M): {"p", "a"}}, set()),
    "F7": (F7, {(P, M): {"r", "x", "y"}, (M, P): {"r"}, (M, M): {"x", "y"}}, set()),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
@pytest.mark.parametrize("engine", [reach_profile, oracle_reach_profile])
def test_fixture_profiles(name, engine):
    build, reach, closed = FROZEN[name]
    p = engine(build(), "r")
    for a in SIGNS:
        for b in SIGNS:
            assert p.R(a, b) == frozenset(reach.get((a, b), set())), (a, b)
            assert p.closed_over(a, b) == ((a, b) in closed)


def test_validate_examples():
    assert validate_ditrail(F3(), with_signs(F3(), ["b", "a", "r"], ["e2", "e1"]))
    assert validate_ditrail(F2(), with_signs(F2(), ["r", "a", "r"], ["e1", "e2"]))


def test_incoherent_walk_rejected():
    g = BidirectedGraph(["r", "a", "b"], [Edge("e1", "a", P, "r", M), Edge("e2", "b", P, "a", P)])
    bad = Ditrail(("b", "a", "r"), ("e2", "e1"), ((P, P), (P, M)))
    assert not validate_ditrail(g, bad)


def test_repeated_edge_rejected():
    g = BidirectedGraph(["r", "a"], [Edge("e1", "a", P, "r", M)])
    walk = Ditrail(("a", "r", "a"), ("e1", "e1"), ((P, M), (M, P)))
    assert not validate_ditrail(g, walk)


def test_find_ditrail_examples():
    w = find_ditrail(F1(), "a", "r", P, M)
    assert w.tokens() == "a e1 r"
    assert find_ditrail(F1(), "a", "r", M, M) is None
    closed = find_ditrail(F2(), "r", "r", M, M)
    assert closed is not None and len(closed) == 2 and validate_ditrail(F2(), closed)


def test_trivial_ditrail_counts_as_opposite_pair():
    w = find_ditrail(F0(), "r", "r", P, M)
    assert w == Ditrail(("r",)) and len(w) == 0
    assert find_ditrail(F0(), "r", "r", P, P) is None


def test_through_restricts_inner_vertices():
    assert find_ditrail_to(F3(), "b", ["r"], P, M, through=["b"]) is None
    assert find_ditrail_to(F3(), "b", ["r"], P, M, through=["b", "a"]) is not None


def test_tokens_round_trip():
    w = find_ditrail(F7(), "x", "r", M)
    assert Ditrail.from_tokens(F7(), w.tokens()).edges == w.edges


def test_oracle_guard():
    g = BidirectedGraph(["r"], [Edge(f"e{i}", "r", P, "r", P) for i in range(13)])
    with pytest.raises(OracleRefusal):
        oracle_reach_profile(g, "r")


def test_engine_matches_oracle_on_every_tiny_graph():
    for g in tiny_graphs(3, 3):
        assert reach_profile(g, "r") == oracle_reach_profile(g, "r"), g


@given(graphs(max_vertices=5, max_edges=8))
def test_engine_matches_oracle(g):
    assert reach_profile(g, "r") == oracle_reach_profile(g, "r")


@given(graphs(max_vertices=4, max_edges=6))
def test_witness_exists_iff_reachable(g):
    p = reach_profile(g, "r")
    for x in g.vertices:
        for a in SIGNS:
            for b in SIGNS:
                w = find_ditrail(g, x, "r", a, b)
                if x == "r" and b == -a:
                    member = True
                else:
                    member = x in p.R(a, b) if x != "r" else p.closed_over(a, b)
                assert (w is not None) == member
                if w is not None and len(w):
                    assert validate_ditrail(g, w)
                    assert (w.start_sign, w.end_sign) == (a, b)


@given(graphs(max_vertices=4, max_edges=5))
def test_enumerated_ditrails_are_valid(g):
    for x in g.vertices:
        for a in SIGNS:
            for w in iter_ditrails(g, x, a):
                assert validate_ditrail(g, w) and w.start_sign == a


@given(graphs(max_vertices=4, max_edges=6))
def test_reversal_swaps_signs(g):
    for x in g.vertices:
        w = find_ditrail(g, x, "r", P)
        if w is not None and len(w):
            rev = w.reversed()
            assert validate_ditrail(g, rev)
            assert (rev.start_sign, rev.end_sign) == (w.end_sign, w.start_sign)


def test_compiled_cache_returns_same_object():
    g = F6()
    assert compiled(g) is compiled(F6())
