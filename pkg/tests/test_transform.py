import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radials.classify import class_report
from radials.fixtures import F1, F6, rooted
from radials.graph import MINUS, PLUS, BidirectedGraph, Edge, GraphError, HypothesisError, RootedGraph
from radials.grounds import ALMOST_STRONG, EXTENDED, LINEAR, STRONG_KIND, ground
from radials.iso import are_isomorphic
from radials.transform import (
    CLASSES,
    COMPOSE_KINDS,
    DecompositionError,
    GenerationError,
    compose,
    completeness,
    decompose_full,
    decompose_step,
    generate,
    split_triplex,
)
from radials.transform.decompose import PRINCIPAL
from radials.transform.grammar import GRAMMARS


def _f6_as_s():
    return RootedGraph(F6().renamed({"r": "s", "a": "a6", "p": "p6"}), "s", PLUS)


def _f1_primed():
    return RootedGraph(F1().renamed({"a": "a2"}, {"e1": "f1"}), "r", PLUS)


def test_compose_sharp_example():
    out = compose("sharp", (_f6_as_s(), rooted("F1")), {"h3": "a"}, verify=True)
    assert len(out.graph) == 4 and class_report(out).sharp
    assert ground(out, LINEAR).graph == F1()


def test_compose_semiradial_with_edgeless_outer_is_identity():
    outer = RootedGraph(BidirectedGraph(["s"]), "s", PLUS)
    out = compose("semiradial", (outer, rooted("F2")), {}, verify=True)
    assert out.graph == rooted("F2").graph


def test_compose_triplex_example():
    h1 = rooted("F6")
    h2 = _f1_primed()
    h3 = RootedGraph(BidirectedGraph(["s"]), "s", PLUS)
    out = compose("triplex", (h1, h2, h3), {}, verify=True)
    ext = ground(out, EXTENDED)
    assert class_report(out).triplex
    assert ext.shell1 == {"a2"} and ext.shell2 == set()


def test_compose_checks_hypotheses():
    with pytest.raises(HypothesisError):
        compose("round", (_f6_as_s(), rooted("F1")), {"h3": "a"})
    with pytest.raises(GraphError):
        compose("sharp", (_f6_as_s(),), {})


def test_triplex_second_part_root_loop_rejected():
    h2 = RootedGraph(BidirectedGraph(["r"], [Edge("l", "r", PLUS, "r", PLUS)]), "r", PLUS)
    h3 = RootedGraph(BidirectedGraph(["s"]), "s", PLUS)
    with pytest.raises(HypothesisError):
        compose("triplex", (rooted("F0"), h2, h3), {})


def test_decompose_examples():
    f1 = decompose_step(rooted("F1"), LINEAR)
    assert f1.ground.graph == F1() and f1.quotient.is_trivial
    f2 = decompose_step(rooted("F2"), STRONG_KIND)
    assert f2.quotient.is_trivial
    hat = compose("sharp", (_f6_as_s(), rooted("F1")), {"h3": "a"})
    dec = decompose_step(hat, LINEAR)
    assert are_isomorphic(dec.quotient, RootedGraph(F6(), "r", PLUS))
    assert dec.recompose().graph == hat.graph


def test_decompose_step_wrong_class():
    with pytest.raises(DecompositionError):
        decompose_step(rooted("F2"), ALMOST_STRONG)


def test_full_tree_examples():
    f6 = decompose_full(rooted("F6"))
    assert [leaf.label for leaf in f6.leaves()] == ["almost-strong-radial"]
    f3 = decompose_full(rooted("F3"))
    assert f3.split is not None
    assert [leaf.label for leaf in f3.leaves()] == ["trivial", "sublinear-radial", "trivial"]
    f1 = decompose_full(rooted("F1"), mode="semiradial")
    assert f1.is_leaf and f1.label == "linear-semiradial"


def test_split_triplex_examples():
    sp = split_triplex(rooted("F6"))
    assert sp.h1.graph == F6() and sp.h2.is_trivial and sp.h3.is_trivial and not sp.wiring
    sp3 = split_triplex(rooted("F3"))
    assert sp3.h1.is_trivial and sp3.h2.graph == rooted("F3").graph and sp3.h3.is_trivial


@pytest.mark.parametrize("cls", CLASSES)
def test_generate_members(cls):
    for seed in range(15):
        size = 1 + seed % 7
        try:
            rg = generate(cls, size, seed)
        except GenerationError:
            continue
        assert len(rg.graph) == size and rg.root == "r"
        assert class_report(rg).has(cls)


def test_generate_is_deterministic():
    assert generate("triplex", 6, 3) == generate("triplex", 6, 3)
    assert generate("triplex", 6, 3) != generate("triplex", 6, 4)


def test_generate_small_examples():
    f2 = RootedGraph(rooted("F2").graph.renamed({"a": "v1"}), "r", PLUS)
    strong2 = generate("strong-radial", 2, 7)
    assert len(strong2.graph) == 2 and class_report(strong2).strong_radial
    assert generate("absolute-semiradial", 1, 0).is_trivial
    assert class_report(f2).strong_radial


def test_generate_rejects_bad_input():
    with pytest.raises(GraphError):
        generate("wobbly", 3)
    with pytest.raises(GenerationError):
        generate("triplex", 0)


@pytest.mark.parametrize("name", GRAMMARS)
@pytest.mark.parametrize("alpha", [PLUS, MINUS])
def test_grammar_completeness_tiny(name, alpha):
    res = completeness(name, alpha)
    assert res["grammar_only"] == [] and res["predicate_only"] == []
    assert res["members"] > 0


@given(st.sampled_from(CLASSES), st.integers(1, 7), st.integers(0, 10_000))
def test_decompose_full_round_trip(cls, size, seed):
    try:
        rg = generate(cls, size, seed, max_edges=12)
    except GenerationError:
        return
    tree = decompose_full(rg)
    assert tree.recompose().graph == rg.graph
    for leaf in tree.leaves():
        assert leaf.label in PRINCIPAL
        if leaf.label != "trivial":
            assert class_report(leaf.graph).has(leaf.label)


def _random_assignment(outer, targets, rng):
    out = {}
    for e in outer.graph.incident[outer.root]:
        out[e.id] = (rng.choice(targets), rng.choice(targets)) if e.is_loop else rng.choice(targets)
    return out


PARTS = {
    "sharp": ("round-radial", "linear-semiradial"),
    "round": ("sharp-semiradial", "almost-strong-radial"),
    "semiradial": ("sharp-semiradial", "absolute-semiradial"),
    "strong-rooted": ("sharp-semiradial", "strong-radial"),
    "sublinear-rooted": ("round-radial", "triplex"),
}


@pytest.mark.parametrize("kind", sorted(PARTS))
def test_compose_then_decompose(kind):
    from radials.transform import disjoint_copy, glue_targets

    step = {"sharp": LINEAR, "round": ALMOST_STRONG, "semiradial": "absolute",
            "strong-rooted": STRONG_KIND, "sublinear-rooted": EXTENDED}[kind]
    rng = random.Random(kind)
    done = 0
    for seed in range(60):
        g_cls, h_cls = PARTS[kind]
        try:
            g = generate(g_cls, rng.randint(1, 4), seed)
            h = generate(h_cls, rng.randint(2, 4), seed)
        except GenerationError:
            continue
        g, _ = disjoint_copy(g, "g_")
        if g.graph.loops_at(g.root):
            continue
        try:
            targets = sorted(glue_targets(kind, (g, h)))
            if not targets and g.graph.incident[g.root]:
                continue
            out = compose(kind, (g, h), _random_assignment(g, targets, rng), verify=True)
        except HypothesisError:
            continue
        dec = decompose_step(out, step)
        assert dec.ground.graph == h.graph
        assert dec.recompose().graph == out.graph
        done += 1
    assert done >= 10


def test_compose_kinds_listed():
    assert set(COMPOSE_KINDS) == set(PARTS) | {"triplex"}
