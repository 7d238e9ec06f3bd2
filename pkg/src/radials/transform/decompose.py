"""Decomposition: contract a ground, record how to undo it, and recurse."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..bdg import emit_bdg
from ..classify import STRONG, SUBLINEAR, class_report
from ..graph import (
    Edge,
    GraphError,
    RootedGraph,
    contract,
    delete_edges,
    edges_between,
    fresh_name,
)
from ..grounds import ABSOLUTE, ALMOST_STRONG, EXTENDED, LINEAR, STRONG_KIND, Ground, ground
from .compose import (
    ROUND,
    SEMIRADIAL,
    SHARP,
    STRONG_ROOTED,
    SUBLINEAR_ROOTED,
    TRIPLEX,
    compose,
)

# ground kind contracted by each step -> construction that inverts it
STEP_INVERSE = {
    ABSOLUTE: SEMIRADIAL,
    LINEAR: SHARP,
    STRONG_KIND: STRONG_ROOTED,
    ALMOST_STRONG: ROUND,
    EXTENDED: SUBLINEAR_ROOTED,
}

# class the quotient must have after each step
STEP_QUOTIENT = {
    ABSOLUTE: "sharp-semiradial",
    LINEAR: "round-radial",
    STRONG_KIND: "sharp-semiradial",
    ALMOST_STRONG: "sharp-semiradial",
    EXTENDED: "round-radial",
}


class DecompositionError(GraphError):
    pass


@dataclass(frozen=True)
class GroundDecomposition:
    step: str
    original: RootedGraph
    ground: Ground
    quotient: RootedGraph
    attachment: Mapping[str, str]
    removed_edges: tuple[Edge, ...] = ()

    @property
    def contracted(self) -> str:
        return self.quotient.root

    def recompose(self, verify: bool | None = None) -> RootedGraph:
        """Glue the quotient back onto the ground (the inverse construction)."""
        if self.quotient.is_trivial and not self.removed_edges:
            # the ground is the whole graph; a triplex has no gluing form here
            return self.ground.rooted
        return compose(
            STEP_INVERSE[self.step],
            (self.quotient, self.ground.rooted),
            dict(self.attachment),
            self.removed_edges,
            verify=verify,
        )

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "ground": self.ground.to_json(),
            "ground_bdg": emit_bdg(self.ground.graph, self.ground.root, self.ground.sign, self.ground.shells_dict()),
            "quotient_bdg": emit_bdg(self.quotient.graph, self.quotient.root, self.quotient.sign),
            "contracted": self.contracted,
            "attachment": dict(sorted(self.attachment.items())),
            "removed_edges": [e.id for e in self.removed_edges],
        }


def auto_step(rg: RootedGraph) -> str:
    """The step the pipeline applies to ``rg`` (radial pipeline preferred)."""
    rep = class_report(rg)
    if rep.radial:
        if rep.root_kind == STRONG:
            return STRONG_KIND
        if rep.round:
            return ALMOST_STRONG
        return EXTENDED
    if rep.semiradial:
        return LINEAR if rep.sharp else ABSOLUTE
    raise DecompositionError("input is neither a radial nor a semiradial")


def _expected(step: str, rg: RootedGraph) -> None:
    rep = class_report(rg)
    ok = {
        ABSOLUTE: rep.semiradial,
        LINEAR: rep.sharp,
        STRONG_KIND: rep.radial and rep.root_kind == STRONG,
        ALMOST_STRONG: rep.round,
        EXTENDED: rep.radial and rep.root_kind == SUBLINEAR,
    }[step]
    if not ok:
        want = {
            ABSOLUTE: "a semiradial",
            LINEAR: "a sharp semiradial",
            STRONG_KIND: "a radial with strong root",
            ALMOST_STRONG: "a round radial",
            EXTENDED: "a radial with sublinear root",
        }[step]
        raise DecompositionError(f"{step} step expects {want}")


def decompose_step(rg: RootedGraph, step: str | None = None, check: bool = True) -> GroundDecomposition:
    """Contract the ground chosen by ``step`` (default: :func:`auto_step`)."""
    step = step or auto_step(rg)
    if step not in STEP_INVERSE:
        raise GraphError(f"unknown step {step!r}")
    _expected(step, rg)
    g, r = rg.graph, rg.root
    gr = ground(rg, step)
    hv = gr.graph.vertex_set
    removed: tuple[Edge, ...] = ()
    if step in (ALMOST_STRONG, EXTENDED):
        ids = edges_between(g, [r], g.vertex_set - hv)
        removed = tuple(g.edge(i) for i in sorted(ids))
        g = delete_edges(g, ids)
    stray = sorted(e.id for e in g.edges if e.u in hv and e.v in hv and not gr.graph.has_edge(e.id))
    if stray:
        raise DecompositionError(f"edges {stray} inside the ground are not ground edges")
    name = fresh_name(g.vertex_set, "h")
    quotient, name = contract(g, hv, name)
    attachment: dict[str, str] = {}
    for e in g.edges:
        if (e.u in hv) != (e.v in hv):
            attachment[e.id] = e.u if e.u in hv else e.v
    q = RootedGraph(quotient, name, rg.sign)
    if check:
        want = STEP_QUOTIENT[step]
        if not class_report(q).has(want):
            raise DecompositionError(f"quotient of the {step} step is not a {want}")
    return GroundDecomposition(step, rg, gr, q, attachment, removed)


# ---------------------------------------------------------------------------
# Triplex split
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriplexSplit:
    h1: RootedGraph
    h2: RootedGraph
    h3: RootedGraph
    attachment: Mapping[str, str]
    wiring: tuple[Edge, ...]

    def recompose(self, verify: bool | None = None) -> RootedGraph:
        return compose(TRIPLEX, (self.h1, self.h2, self.h3), dict(self.attachment), self.wiring, verify=verify)

    def to_json(self) -> dict:
        return {
            "h1_bdg": emit_bdg(self.h1.graph, self.h1.root, self.h1.sign),
            "h2_bdg": emit_bdg(self.h2.graph, self.h2.root, self.h2.sign),
            "h3_bdg": emit_bdg(self.h3.graph, self.h3.root, self.h3.sign),
            "attachment": dict(sorted(self.attachment.items())),
            "wiring": [e.id for e in self.wiring],
        }


def split_triplex(rg: RootedGraph) -> TriplexSplit:
    """Almost strong ground, first-shell radial and second-shell semiradial of a triplex."""
    if not class_report(rg).triplex:
        raise DecompositionError("split needs a triplex radial")
    g, r, a = rg.graph, rg.root, rg.sign
    ext = ground(rg, EXTENDED)
    h1g = ground(rg, ALMOST_STRONG).graph
    v1 = h1g.vertex_set
    s1, s2 = ext.shell1, ext.shell2
    h2g = g.induced(s1 | {r})
    h2g = delete_edges(h2g, [e.id for e in h2g.loops_at(r)])
    wiring = []
    for e in g.edges:
        for (x, sx), (y, _) in ((e.ends()[0], e.ends()[1]), (e.ends()[1], e.ends()[0])):
            if x in s1 and y in ((v1 - {r}) | s2):
                if sx != a:
                    raise DecompositionError(f"first-shell edge {e.id} has the wrong sign")
                wiring.append(e)
                break
            if x == r and y in s2:
                if sx != a:
                    raise DecompositionError(f"root edge {e.id} into the second shell has the wrong sign")
                wiring.append(e)
                break
    wiring_ids = {e.id for e in wiring}
    part3 = g.induced(s2 | v1)
    part3 = delete_edges(part3, [i for i in part3.edge_ids if i in wiring_ids])
    name = fresh_name(g.vertex_set, "s")
    h3g, name = contract(part3, v1, name)
    attachment = {}
    for e in part3.edges:
        if (e.u in v1) != (e.v in v1):
            attachment[e.id] = e.u if e.u in v1 else e.v
    return TriplexSplit(
        RootedGraph(h1g, r, a),
        RootedGraph(h2g, r, a),
        RootedGraph(h3g, name, a),
        attachment,
        tuple(sorted(wiring, key=lambda e: e.id)),
    )


# ---------------------------------------------------------------------------
# Full decomposition trees
# ---------------------------------------------------------------------------

LEAF_FOR_GROUND = {
    ABSOLUTE: "absolute-semiradial",
    LINEAR: "linear-semiradial",
    STRONG_KIND: "strong-radial",
    ALMOST_STRONG: "almost-strong-radial",
}


@dataclass
class DecompositionNode:
    label: str
    graph: RootedGraph
    step: GroundDecomposition | None = None
    split: TriplexSplit | None = None
    children: list["DecompositionNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["DecompositionNode"]:
        if self.is_leaf:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def to_json(self) -> dict:
        out: dict = {
            "label": self.label,
            "bdg": emit_bdg(self.graph.graph, self.graph.root, self.graph.sign),
        }
        if self.step is not None:
            out["step"] = self.step.to_json()
        if self.split is not None:
            out["split"] = self.split.to_json()
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def recompose(self) -> RootedGraph:
        """Rebuild this node's graph bottom-up from its leaves."""
        if self.is_leaf:
            return self.graph
        if self.split is not None:
            h1, h2, h3 = (c.recompose() for c in self.children)
            return compose(TRIPLEX, (h1, h2, h3), dict(self.split.attachment), self.split.wiring)
        assert self.step is not None
        ground_part, quotient_part = (c.recompose() for c in self.children)
        return compose(
            STEP_INVERSE[self.step.step],
            (quotient_part, ground_part),
            dict(self.step.attachment),
            self.step.removed_edges,
        )


PRINCIPAL = (
    "absolute-semiradial",
    "strong-radial",
    "almost-strong-radial",
    "linear-semiradial",
    "sublinear-radial",
    "trivial",
)


def _leaf(label: str, rg: RootedGraph) -> DecompositionNode:
    return DecompositionNode("trivial" if rg.is_trivial else label, rg)


def decompose_full(rg: RootedGraph, mode: str = "auto") -> DecompositionNode:
    """Recursive decomposition down to principal-class leaves.

    ``mode`` picks the pipeline at the top: ``radial``, ``semiradial`` or
    ``auto`` (radial whenever the input is a radial).  Quotients follow the
    class their step guarantees.
    """
    rep = class_report(rg)
    if mode == "auto":
        mode = "radial" if rep.radial else "semiradial"
    if mode == "radial":
        if not rep.radial:
            raise DecompositionError("input is not a radial")
        return _radial(rg)
    if mode == "semiradial":
        if not rep.semiradial:
            raise DecompositionError("input is not a semiradial")
        return _semiradial(rg)
    raise GraphError(f"unknown mode {mode!r}")


def _contract_node(label: str, rg: RootedGraph, step: str, quotient_builder) -> DecompositionNode:
    dec = decompose_step(rg, step)
    if dec.ground.graph == rg.graph:
        return _leaf(LEAF_FOR_GROUND[step], rg)
    ground_child = _leaf(LEAF_FOR_GROUND[step], dec.ground.rooted)
    return DecompositionNode(label, rg, step=dec, children=[ground_child, quotient_builder(dec.quotient)])


def _semiradial(rg: RootedGraph) -> DecompositionNode:
    if rg.is_trivial:
        return _leaf("trivial", rg)
    if class_report(rg).sharp:
        return _sharp(rg)
    return _contract_node("semiradial", rg, ABSOLUTE, _sharp)


def _sharp(rg: RootedGraph) -> DecompositionNode:
    if rg.is_trivial:
        return _leaf("trivial", rg)
    return _contract_node("sharp-semiradial", rg, LINEAR, _round)


def _round(rg: RootedGraph) -> DecompositionNode:
    if rg.is_trivial:
        return _leaf("trivial", rg)
    return _contract_node("round-radial", rg, ALMOST_STRONG, _sharp)


def _radial(rg: RootedGraph) -> DecompositionNode:
    if rg.is_trivial:
        return _leaf("trivial", rg)
    rep = class_report(rg)
    if rep.root_kind == STRONG:
        return _contract_node("radial-strong-root", rg, STRONG_KIND, _sharp)
    dec = decompose_step(rg, EXTENDED)
    if dec.ground.graph == rg.graph:
        return _triplex(rg)
    return DecompositionNode(
        "radial-sublinear-root",
        rg,
        step=dec,
        children=[_triplex(dec.ground.rooted), _round(dec.quotient)],
    )


def _triplex(rg: RootedGraph) -> DecompositionNode:
    sp = split_triplex(rg)
    if sp.h1.graph == rg.graph:
        return _leaf("almost-strong-radial", rg)
    children = [
        _leaf("almost-strong-radial", sp.h1),
        _leaf("sublinear-radial", sp.h2),
        _leaf("linear-semiradial", sp.h3),
    ]
    return DecompositionNode("triplex", rg, split=sp, children=children)


__all__ = [
    "GroundDecomposition",
    "DecompositionNode",
    "TriplexSplit",
    "DecompositionError",
    "decompose_step",
    "decompose_full",
    "split_triplex",
    "auto_step",
    "STEP_INVERSE",
    "STEP_QUOTIENT",
    "PRINCIPAL",
]
