import pytest
from hypothesis import given

from radials.classify import (
    CLASS_TESTS,
    NOT_RADIAL,
    STRONG,
    SUBLINEAR,
    class_report,
    classify_vertex,
    root_kind,
)
from radials.ditrail import oracle_reach_profile
from radials.families import tiny_rooted
from radials.fixtures import rooted
from radials.graph import MINUS, PLUS, BidirectedGraph, Edge, RootedGraph
from radials.grounds import EXTENDED, ground
from strategies import rooted_graphs

# class names holding for each fixture (orientation +), frozen from oracle profiles
FROZEN = {
    "F0": {"radial", "semiradial", "absolute-semiradial", "almost-strong-radial", "linear-semiradial",
           "sublinear-radial", "sharp-semiradial", "round-radial", "triplex", "radial-sublinear-root"},
    "F1": {"radial", "semiradial", "linear-semiradial", "sublinear-radial", "sharp-semiradial", "triplex",
           "radial-sublinear-root"},
    "F2": {"radial", "semiradial", "absolute-semiradial", "strong-radial", "radial-strong-root"},
    "F3": {"radial", "semiradial", "linear-semiradial", "sublinear-radial", "sharp-semiradial", "triplex",
           "radial-sublinear-root"},
    "F6": {"radial", "semiradial", "absolute-semiradial", "almost-strong-radial", "round-radial", "triplex",
           "radial-sublinear-root"},
    "F7": {"radial", "semiradial", "absolute-semiradial", "almost-strong-radial", "round-radial", "triplex",
           "radial-sublinear-root"},
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_fixture_classes(name):
    rep = class_report(rooted(name))
    assert {c for c in CLASS_TESTS if rep.has(c)} == FROZEN[name]


def test_vertex_classes():
    a1 = classify_vertex(rooted("F1"), "a")
    assert (a1.trail_label, a1.strict_label) == ("linear(+)", "sublinear(+)")
    a2 = classify_vertex(rooted("F2"), "a")
    assert (a2.trail_label, a2.strict_label) == ("absolute", "strong(+)")


def test_root_kinds():
    assert root_kind(rooted("F2")) == STRONG
    assert root_kind(rooted("F1")) == SUBLINEAR
    g = BidirectedGraph(["r", "a"], [Edge("e1", "a", MINUS, "r", MINUS)])
    assert root_kind(RootedGraph(g, "r", PLUS)) == NOT_RADIAL


def test_isolated_vertex_breaks_radial():
    g = BidirectedGraph(["r", "a"])
    rep = class_report(RootedGraph(g, "r", PLUS))
    assert not rep.radial and not rep.semiradial


def test_engine_and_oracle_reports_agree_on_tiny_family():
    for rg in tiny_rooted(3, 3):
        assert class_report(rg) == class_report(rg, oracle_reach_profile(rg.graph, rg.root))


@given(rooted_graphs())
def test_report_invariants(rg):
    rep = class_report(rg)
    assert not (rep.strong_radial and rep.almost_strong_radial)
    if rep.sharp:
        assert rep.semiradial
    if rep.round or rep.triplex:
        assert rep.radial and rep.root_kind == SUBLINEAR
    if rep.radial:
        assert rep.semiradial
    for name in ("absolute-semiradial", "linear-semiradial"):
        if rep.has(name):
            assert rep.semiradial
    for name in ("strong-radial", "almost-strong-radial", "sublinear-radial"):
        if rep.has(name):
            assert rep.radial


@given(rooted_graphs())
def test_absolute_is_orientation_free(rg):
    assert class_report(rg).absolute_semiradial == class_report(rg.flipped()).absolute_semiradial


@given(rooted_graphs())
def test_triplex_means_extended_ground_is_everything(rg):
    rep = class_report(rg)
    if rep.radial and rep.root_kind == SUBLINEAR:
        assert rep.triplex == (ground(rg, EXTENDED).graph == rg.graph)
