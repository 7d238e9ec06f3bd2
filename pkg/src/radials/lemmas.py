"""Executable property checks, one per structural lemma, run over tiny and random families.

Each check takes an instance (a tuple of rooted graphs) and returns ``None``
when the lemma's hypotheses do not hold, or a list of failure messages
(empty when the conclusion held).  Every free parameter of a lemma (vertex
sets, edge sets, signs, witnesses) is enumerated or drawn inside the check
from an instance-local seed, so a failing instance can be re-run and shrunk.

Families: the exhaustive tiny family is every rooted graph on at most three
vertices and three edges (both orientations) lying in the check's ambient
class; the random family draws class-targeted members from the generators,
mixing in plain random graphs one time in five.
"""

from __future__ import annotations

import contextlib
import itertools
import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from . import ditrail
from .bdg import emit_bdg
from .classify import CLASS_TESTS, class_report, graph_class_bits, vertex_table
from .ditrail import compiled, find_ditrail, find_ditrail_to, iter_ditrails, reach_profile
from .ears import SCOOP, SIMPLE, iter_diears
from .families import random_rooted, tiny_rooted
from .graph import (
    SIGNS,
    BidirectedGraph,
    Edge,
    GraphError,
    HypothesisError,
    RootedGraph,
    Sign,
    add_edges,
    contract,
    delete_edges,
    edges_between,
    gluing_sum,
    neighborhood,
    signed_cut,
)
from .grounds import ABSOLUTE, ALMOST_STRONG, EXTENDED, LINEAR, STRONG_KIND, ground
from .transform.compose import (
    ROUND,
    SEMIRADIAL,
    SHARP,
    STRONG_ROOTED,
    SUBLINEAR_ROOTED,
    TRIPLEX,
    CompositionError,
    compose,
    disjoint_copy,
    glue_targets,
)
from .transform.decompose import DecompositionError, decompose_full, decompose_step
from .transform.generate import CLASSES, GenerationError, generate
from .transform.grammar import GRAMMAR_CLASS, GRAMMARS, grammar_shapes, graph_of, shape_of

Instance = tuple[RootedGraph, ...]
Outcome = list[str] | None

MIN_RATE = 0.30
MAX_SUBSETS = 16
REDRAWS = 4


@dataclass(frozen=True)
class Bounds:
    tiny_vertices: int = 3
    tiny_edges: int = 3
    trials: int = 100
    max_vertices: int = 7
    max_edges: int = 10
    exhaustive: bool = True


@dataclass(frozen=True)
class PropertyCheck:
    id: str
    statement: str
    family: str
    assertion: Callable[[Instance, random.Random], Outcome]
    arity: int = 1


@dataclass
class CheckReport:
    id: str
    statement: str
    instances: int = 0
    skipped: int = 0
    failures: int = 0
    tiny_instances: int = 0
    random_instances: int = 0
    counterexample: str | None = None
    witness: list[str] = field(default_factory=list)

    @property
    def satisfied(self) -> int:
        return self.instances - self.skipped

    @property
    def rate(self) -> float:
        return self.satisfied / self.instances if self.instances else 0.0

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        out = asdict(self)
        out["satisfied"] = self.satisfied
        out["rate"] = round(self.rate, 4)
        return out


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _prof(rg: RootedGraph):
    return reach_profile(rg.graph, rg.root)


def _rsets(p, a: Sign) -> dict[Sign, frozenset[str]]:
    return {b: p.R(b, -a) for b in SIGNS}


def _anysets(p) -> dict[Sign, frozenset[str]]:
    return {b: p.any(b) for b in SIGNS}


def _root_sets(g: BidirectedGraph, r: str, rng: random.Random, proper: bool = False) -> list[frozenset[str]]:
    others = [v for v in g.vertices if v != r]
    out = []
    for k in range(len(others) + 1):
        for c in itertools.combinations(others, k):
            if proper and k == len(others):
                continue
            out.append(frozenset((r, *c)))
    if len(out) > MAX_SUBSETS:
        out = rng.sample(out, MAX_SUBSETS)
    return out


def _subsets(items: Sequence, rng: random.Random, nonempty: bool = True) -> list[tuple]:
    items = list(items)
    if len(items) <= 4:
        out = [c for k in range(0 if not nonempty else 1, len(items) + 1) for c in itertools.combinations(items, k)]
    else:
        out = [(x,) for x in items] + [tuple(items)]
        out += [tuple(rng.sample(items, rng.randint(2, len(items) - 1))) for _ in range(3)]
    return out


def _is(rg: RootedGraph, cls: str) -> bool:
    return class_report(rg).has(cls)


def _linear_in(p, v: str, a: Sign) -> bool:
    return v in p.any(a) and v not in p.any(-a)


def _sublinear_in(p, v: str, a: Sign) -> bool:
    return v in p.R(a, -a) and v not in p.R(-a, -a)


def _strong_in(p, v: str, a: Sign) -> bool:
    return v in p.R(a, -a) and v in p.R(-a, -a)


def _eq(label: str, left: frozenset, right: frozenset) -> list[str]:
    if left == right:
        return []
    return [f"{label}: {sorted(left)} != {sorted(right)}"]


def _fresh_edge(g: BidirectedGraph, u: str, su: Sign, v: str, sv: Sign, tag: str = "n") -> Edge:
    i = 1
    while g.has_edge(f"{tag}{i}"):
        i += 1
    return Edge(f"{tag}{i}", u, su, v, sv)


def _add(g: BidirectedGraph, specs: Iterable[tuple[str, Sign, str, Sign]]) -> BidirectedGraph:
    for spec in specs:
        g = add_edges(g, [_fresh_edge(g, *spec)])
    return g


def _induced_bits(rg: RootedGraph, vertices: frozenset[str]) -> dict[str, bool]:
    h = rg.graph.induced(vertices)
    return graph_class_bits(compiled(h), rg.root, rg.sign)


# ---------------------------------------------------------------------------
# Reach-set edits
# ---------------------------------------------------------------------------


def _edge_hosts(rg: RootedGraph, rng: random.Random, semi: bool):
    """Induced (semi)radial subgraphs ``H`` with the neighborhood condition of the edit lemmas."""
    g, r, a = rg.graph, rg.root, rg.sign
    p = _prof(rg)
    bad = p.any(-a) if semi else p.R(-a, -a)
    want = "semiradial" if semi else "radial"
    for u in _root_sets(g, r, rng):
        outside = g.vertex_set - u
        if not outside:
            continue
        if not _induced_bits(rg, u)[want]:
            continue
        if neighborhood(g, outside) & bad:
            continue
        yield u, outside, p, bad


def check_edgeadd(semi: bool):
    def run(inst: Instance, rng: random.Random) -> Outcome:
        (rg,) = inst
        g, r, a = rg.graph, rg.root, rg.sign
        tried, fails = False, []
        for u, outside, p, bad in _edge_hosts(rg, rng, semi):
            tried = True
            ends = sorted(u - bad)
            specs = [(x, a, y, s) for x in ends for y in sorted(outside) for s in SIGNS]
            batches = [[sp] for sp in specs]
            if len(specs) > 1:
                batches.append(rng.sample(specs, min(3, len(specs))))
            before = _anysets(p) if semi else _rsets(p, a)
            for batch in batches:
                p2 = reach_profile(_add(g, batch), r)
                after = _anysets(p2) if semi else _rsets(p2, a)
                for b in SIGNS:
                    fails += _eq(f"H={sorted(u)} add {batch} beta={b}", after[b], before[b])
        return fails if tried else None

    return run


def check_delete(semi: bool):
    def run(inst: Instance, rng: random.Random) -> Outcome:
        (rg,) = inst
        g, r, a = rg.graph, rg.root, rg.sign
        tried, fails = False, []
        for u, outside, p, bad in _edge_hosts(rg, rng, semi):
            tried = True
            cut, _ = signed_cut(g, u, a)
            before = _anysets(p) if semi else _rsets(p, a)
            for f in _subsets(sorted(cut), rng):
                p2 = reach_profile(delete_edges(g, f), r)
                after = _anysets(p2) if semi else _rsets(p2, a)
                for b in SIGNS:
                    fails += _eq(f"H={sorted(u)} delete {list(f)} beta={b}", after[b], before[b])
        return fails if tried else None

    return run


def check_oneadd(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    combos = []
    for u, outside, p, bad in _edge_hosts(rg, rng, semi=False):
        for x in sorted(u - bad):
            for y in sorted(outside):
                for s in SIGNS:
                    combos.append((u, outside, x, y, s))
    if not combos:
        return None
    if len(combos) > 6:
        combos = rng.sample(combos, 6)
    fails = []
    for u, outside, x0, y0, s in combos:
        e = _fresh_edge(g, x0, a, y0, s)
        g2 = add_edges(g, [e])
        cut = edges_between(g, u, outside)
        for x in g.vertices:
            for b in SIGNS:
                for path in iter_ditrails(g2, x, b):
                    if path.end != r or path.end_sign != -a or e.id not in path.edges:
                        continue
                    banned = (cut - set(path.edges)) | {e.id}
                    if find_ditrail(g2, x, r, b, -a, banned) is None:
                        fails.append(f"add {e}: no replacement for {path.tokens()}")
    return fails


def check_nobypass(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, a = rg.graph, rg.sign
    p = _prof(rg)
    groups = [p.R(a, -a) - p.R(-a, -a), p.any(a) - p.any(-a)]
    if not any(groups):
        return None
    fails = []
    for grp in groups:
        for x in sorted(grp):
            for y in sorted(grp):
                w = find_ditrail(g, x, y, -a, -a)
                if w is not None:
                    fails.append(f"({-a},{-a})-ditrail {x}->{y}: {w.tokens()}")
    return fails


def check_neigh2ear(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r = rg.graph, rg.root
    p = _prof(rg)
    tried, fails = False, []
    for s in _root_sets(g, r, rng, proper=True):
        ears = None
        for e in g.edges:
            if e.is_loop or (e.u in s) == (e.v in s):
                continue
            x = e.u if e.v in s else e.v
            y = e.other(x)[0]
            beta = e.sign_at(x)
            if x not in p.any(-beta):
                continue
            tried = True
            if ears is None:
                ears = list(iter_diears(g, s))

            def fits(ear) -> bool:
                w = ear.walk
                if ear.kind == SCOOP:
                    return ear.grip == e.id
                first = w.edges[0] == e.id and w.vertices[0] == y and w.vertices[1] == x
                last = w.edges[-1] == e.id and w.vertices[-1] == y and w.vertices[-2] == x
                return first or last

            if not any(fits(ear) for ear in ears):
                fails.append(f"S={sorted(s)} edge {e.id}: no diear through it")
    return fails if tried else None


# ---------------------------------------------------------------------------
# Unions of subgraphs
# ---------------------------------------------------------------------------


def check_union(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    comp = compiled(g)
    ri = comp.index[r]
    p = _prof(rg)
    masks = range(comp.full_mask + 1)
    if comp.full_mask + 1 > 256:
        masks = sorted({0, comp.full_mask, *(rng.getrandbits(len(comp.edge_names)) for _ in range(254))})

    def info(mask: int):
        vb = comp.incident_vertices(mask) | (1 << ri)
        return vb, graph_class_bits(comp, r, a, mask, vb)

    semis = []
    for m in masks:
        vb, bits = info(m)
        if bits["semiradial"]:
            semis.append((m, vb, bits))
    lin_ok = {v for v in g.vertices if _linear_in(p, v, a)} | {r}
    sublin = {v for v in g.vertices if _sublinear_in(p, v, a)}
    hv = None
    rep = class_report(rg)
    if rep.radial and rep.root_kind == "sublinear":
        hv = comp.vset_of(ground(rg, ALMOST_STRONG).graph.vertices)
    pairs = list(itertools.combinations(semis, 2))
    if len(pairs) > 300:
        pairs = rng.sample(pairs, 300)
    if not pairs:
        return None
    fails = []
    for (m1, v1, b1), (m2, v2, b2) in pairs:
        _, bu = info(m1 | m2)
        tag = f"{sorted(comp.edges_of(m1))}+{sorted(comp.edges_of(m2))}"
        if not bu["semiradial"]:
            fails.append(f"{tag}: union not semiradial")
        if b1["absolute-semiradial"] and b2["absolute-semiradial"] and not bu["absolute-semiradial"]:
            fails.append(f"{tag}: union not absolute")
        if (
            b1["linear-semiradial"]
            and b2["linear-semiradial"]
            and comp.names_of(v1 | v2) <= lin_ok
            and not bu["linear-semiradial"]
        ):
            fails.append(f"{tag}: union not linear")
        if b1["radial"] and b2["radial"]:
            if not bu["radial"]:
                fails.append(f"{tag}: union not radial")
            strongish = ("strong-radial", "almost-strong-radial")
            if any(b1[k] for k in strongish) and any(b2[k] for k in strongish):
                if not any(bu[k] for k in strongish):
                    fails.append(f"{tag}: union neither strong nor almost strong")
            if hv is not None:
                ok1 = v1 & hv == hv and comp.names_of(v1 & ~hv) <= sublin
                ok2 = v2 & hv == hv and comp.names_of(v2 & ~hv) <= sublin
                if ok1 and ok2 and not bu["radial"]:
                    fails.append(f"{tag}: shell union not radial")
    return fails


# ---------------------------------------------------------------------------
# Neighbors of grounds
# ---------------------------------------------------------------------------


def check_rnei2alt(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    nb = sorted(g.neighbors(r) - {r})
    p = _prof(rg)
    abs_v = ground(rg, ABSOLUTE).graph.vertex_set
    lin_v = ground(rg, LINEAR).graph.vertex_set
    fails = []
    for v in nb:
        if _linear_in(p, v, a):
            if v not in lin_v:
                fails.append(f"linear neighbor {v} outside the linear ground")
        elif v not in abs_v:
            fails.append(f"nonlinear neighbor {v} outside the absolute ground")
    return fails


def check_abgnei2lin(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    hv = ground(rg, ABSOLUTE).graph.vertex_set
    nb = neighborhood(rg.graph, hv)
    p = _prof(rg)
    return [f"neighbor {v} of the absolute ground is not linear" for v in sorted(nb) if not _linear_in(p, v, rg.sign)]


def check_lg2neigh(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, a = rg.graph, rg.sign
    h = ground(rg, LINEAR).graph
    if h.vertex_set == g.vertex_set:
        return None
    fails = []
    for ear in iter_diears(g, h, kind=SIMPLE, sign_pair=(-a, -a)):
        fails.append(f"simple ({-a},{-a})-diear {ear.tokens()}")
        break
    cut, _ = signed_cut(g, h.vertex_set, -a)
    if not cut:
        fails.append(f"no {-a} edge leaves the linear ground")
    p = _prof(rg)
    for eid in sorted(cut):
        e = g.edge(eid)
        u = e.u if e.u not in h else e.v
        if not (u in p.any(a) and u in p.any(-a)):
            fails.append(f"end {u} of {eid} is not absolute")
        if next(iter_diears(g, h, kind=SCOOP, grip=eid), None) is None:
            fails.append(f"no scoop diear with grip {eid}")
    return fails


def check_astg_neigh(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    rep = class_report(rg)
    if rep.root_kind == "strong":
        hv = ground(rg, STRONG_KIND).graph.vertex_set
        nb = neighborhood(g, hv)
    else:
        hv = ground(rg, ALMOST_STRONG).graph.vertex_set
        nb = neighborhood(g, hv - {r}) - hv if hv - {r} else frozenset()
    p = _prof(rg)
    return [f"ground neighbor {v} is not sublinear" for v in sorted(nb) if not _sublinear_in(p, v, a)]


def check_rrneigh2g(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    _, nb = signed_cut(g, [r], -a)
    p = _prof(rg)
    hv = ground(rg, ALMOST_STRONG).graph.vertex_set
    s1 = ground(rg, EXTENDED).shell1
    fails = []
    for v in sorted(nb):
        if _strong_in(p, v, a) and v not in hv:
            fails.append(f"strong neighbor {v} outside the almost strong ground")
        if _sublinear_in(p, v, a) and v not in s1:
            fails.append(f"sublinear neighbor {v} outside the first shell")
    return fails


def check_shellneigh2strong(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, a = rg.graph, rg.sign
    i = ground(rg, EXTENDED).graph
    fails = []
    for ear in iter_diears(g, i, kind=SIMPLE, sign_pair=(-a, -a)):
        fails.append(f"simple ({-a},{-a})-diear {ear.tokens()}")
        break
    if i.vertex_set != g.vertex_set:
        _, nb = signed_cut(g, i.vertex_set, -a)
        if not nb:
            fails.append(f"no {-a} neighbor of the extended ground")
        p = _prof(rg)
        fails += [f"neighbor {v} is not strong" for v in sorted(nb) if not _strong_in(p, v, a)]
    return fails


def check_asg2neigh(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    _, nb = signed_cut(rg.graph, [rg.root], -rg.sign)
    hv = ground(rg, ALMOST_STRONG).graph.vertex_set
    return [f"{v} outside the almost strong ground" for v in sorted(nb - hv)]


# ---------------------------------------------------------------------------
# Shells
# ---------------------------------------------------------------------------


def check_obs_shell(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    h = ground(rg, ALMOST_STRONG).graph
    ext = ground(rg, EXTENDED)
    fails = []
    if not ext.shell1 and not ext.shell2:
        if not (ext.graph == h):
            fails.append("empty shells but extended ground differs from almost strong ground")
        if not (rg.graph == ext.graph):
            fails.append("empty shells but the graph differs from its extended ground")
    if h.vertex_set == {rg.root} and ext.shell2:
        fails.append("trivial almost strong ground with a nonempty second shell")
    return fails


def check_shell2path(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    ext = ground(rg, EXTENDED)
    s1, s2 = ext.shell1, ext.shell2
    if not s1 and not s2:
        return None
    hv = ground(rg, ALMOST_STRONG).graph.vertex_set
    shell = s1 | s2
    fails = []
    inner = g.induced(shell | {r})
    for x in sorted(s1):
        for path in iter_ditrails(inner, x, a):
            if path.end == r and path.end_sign == -a and not set(path.vertices) - {r} <= s1:
                fails.append(f"first-shell ditrail leaves the first shell: {path.tokens()}")
    for x in sorted(s2):
        for path in iter_ditrails(g, x, a):
            if path.end != r or path.end_sign != -a:
                continue
            first_out = next((v for v in path.vertices if v not in s2), None)
            if first_out is None or first_out not in hv - {r}:
                fails.append(f"second-shell ditrail exits at {first_out}: {path.tokens()}")
        for y in sorted(hv - {r}):
            w = find_ditrail_to(g, x, [y], -a, through=s2)
            if w is not None:
                fails.append(f"{-a}-ditrail from {x} to {y} inside the second shell: {w.tokens()}")
    return fails


def check_shell_structure(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    ext = ground(rg, EXTENDED)
    hv = ground(rg, ALMOST_STRONG).graph.vertex_set
    s1, s2 = ext.shell1, ext.shell2
    if not s1 and not s2:
        return None
    fails = []
    if not _is(RootedGraph(g.induced(s1 | {r}), r, a), "sublinear-radial"):
        fails.append("first-shell part is not a sublinear radial")
    part = g.induced(s2 | hv)
    part = delete_edges(part, edges_between(part, [r], s2))
    quot, name = contract(part, hv, "__s")
    if not _is(RootedGraph(quot, name, a), "linear-semiradial"):
        fails.append("second-shell quotient is not a linear semiradial")
    for e in g.edges:
        for (u, su), (v, _) in (e.ends(), e.ends()[::-1]):
            if u in s1 and v in ((hv - {r}) | s2) and su != a:
                fails.append(f"edge {e.id} leaves the first shell with sign {su}")
            if u == r and v in s2 and su != a:
                fails.append(f"root edge {e.id} into the second shell has sign {su}")
    return fails


# ---------------------------------------------------------------------------
# Ditrails through a subgraph
# ---------------------------------------------------------------------------


def _to_set(g: BidirectedGraph, x: str, targets, start: Sign, end: Sign | None, forbidden) -> bool:
    return find_ditrail_to(g, x, targets, start, end, forbidden) is not None


def check_const4(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    pg = _prof(rg)
    tried, fails = False, []
    for u in _root_sets(g, r, rng):
        outside = g.vertex_set - u
        if not outside:
            continue
        h = g.induced(u)
        ph = reach_profile(h, r)
        nb = neighborhood(g, outside)
        hid = h.edge_ids
        variants = [
            ("const4l-r", nb <= ph.R(a, -a) - pg.R(-a, -a), -a, -a, True),
            ("const4l-sr", nb <= ph.any(a) - pg.any(-a), None, -a, True),
            ("const4s-r", nb <= ph.R(a, -a) & ph.R(-a, -a), -a, None, True),
            ("const4s-sr", nb <= ph.any(a) & ph.any(-a), None, None, True),
        ]
        for name, hyp, left_end, right_end, _ in variants:
            if not hyp:
                continue
            tried = True
            for x in sorted(outside):
                for b in SIGNS:
                    left = _to_set(g, x, [r], b, left_end, ())
                    right = _to_set(g, x, u, b, right_end, hid)
                    if left != right:
                        fails.append(f"{name} H={sorted(u)} x={x} beta={b}: {left} vs {right}")
    return fails if tried else None


def check_quotient_paths(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    rep = class_report(rg)
    fails = []
    tried = False
    if rep.semiradial:
        tried = True
        h = ground(rg, ABSOLUTE).graph
        for x in g.vertices:
            for b in SIGNS:
                if _to_set(g, x, [r], b, None, ()) != _to_set(g, x, h.vertices, b, None, h.edge_ids):
                    fails.append(f"absolute ground paths differ at {x} beta={b}")
    if rep.radial and rep.root_kind == "strong":
        tried = True
        h = ground(rg, STRONG_KIND).graph
        for x in g.vertices:
            for b in SIGNS:
                if _to_set(g, x, [r], b, -a, ()) != _to_set(g, x, h.vertices, b, None, h.edge_ids):
                    fails.append(f"strong ground paths differ at {x} beta={b}")
    if rep.radial and rep.root_kind == "sublinear":
        tried = True
        i = ground(rg, EXTENDED).graph
        cut = edges_between(g, [r], g.vertex_set - i.vertex_set)
        g2 = delete_edges(g, cut)
        for x in sorted(g.vertex_set - i.vertex_set):
            for b in SIGNS:
                s1 = _to_set(g, x, [r], b, -a, ())
                s2 = _to_set(g2, x, [r], b, -a, ())
                tv = i.vertex_set - {r}
                s3 = _to_set(g, x, tv, b, -a, i.edge_ids | cut) if tv else False
                if not s1 == s2 == s3:
                    fails.append(f"extended ground paths differ at {x} beta={b}: {s1} {s2} {s3}")
    if rep.sharp:
        tried = True
        h = ground(rg, LINEAR).graph
        for x in sorted(g.vertex_set - h.vertex_set):
            for b in SIGNS:
                if _to_set(g, x, [r], b, None, ()) != _to_set(g, x, h.vertices, b, -a, h.edge_ids):
                    fails.append(f"linear ground paths differ at {x} beta={b}")
    if rep.round:
        tried = True
        h = ground(rg, ALMOST_STRONG).graph
        cut = edges_between(g, [r], g.vertex_set - h.vertex_set)
        g2 = delete_edges(g, cut)
        for x in sorted(g.vertex_set - h.vertex_set):
            for b in SIGNS:
                s1 = _to_set(g, x, [r], b, -a, ())
                s2 = _to_set(g2, x, [r], b, -a, ())
                tv = h.vertex_set - {r}
                s3 = _to_set(g2, x, tv, b, None, h.edge_ids) if tv else False
                if not s1 == s2 == s3:
                    fails.append(f"almost strong ground paths differ at {x} beta={b}: {s1} {s2} {s3}")
    return fails if tried else None


# ---------------------------------------------------------------------------
# Gluing and root edges
# ---------------------------------------------------------------------------


def _glue(g: RootedGraph, h: RootedGraph, targets: Sequence[str], rng: random.Random) -> BidirectedGraph | None:
    edges = g.graph.incident[g.root]
    if edges and not targets:
        return None
    assignment = {}
    for e in edges:
        if e.is_loop:
            assignment[e.id] = (rng.choice(targets), rng.choice(targets))
        else:
            assignment[e.id] = rng.choice(targets)
    return gluing_sum(g.graph, g.root, h.graph, targets, assignment)


def check_glue_reach(inst: Instance, rng: random.Random) -> Outcome:
    g, h = inst
    a = g.sign
    s, r = g.root, h.root
    rg_, rh = class_report(g), class_report(h)
    pg, ph = _prof(g), _prof(h)
    gout = g.graph.vertex_set - {s}
    lemmas = []
    if rg_.sharp and rh.radial:
        lemmas.append(("construct2r", [v for v in h.graph.vertices if _strong_in(ph, v, a)], "r", "any"))
    if rg_.sharp and rh.semiradial:
        lemmas.append(("construct2sr", [v for v in h.graph.vertices if v in ph.any(a) and v in ph.any(-a)], "any", "any"))
    sub_root = rg_.radial and rg_.root_kind == "sublinear"
    if sub_root and rh.semiradial:
        allowed = [v for v in h.graph.vertices if v not in ph.any(-a)]
        lemmas.append(("construct2lin", allowed, "any", "r"))
        if not signed_cut(g.graph, [s], a)[0]:
            lemmas.append(("trimmedr2const", allowed, "any", "r"))
    if sub_root and rh.radial:
        lemmas.append(("construct2sublin", [v for v in h.graph.vertices if v not in ph.R(-a, -a)], "r", "r"))
    fails, tried = [], False
    for name, allowed, hat_kind, g_kind in lemmas:
        for targets in _subsets(allowed, rng, nonempty=bool(g.graph.incident[s])):
            hat = _glue(g, h, list(targets), rng)
            if hat is None:
                continue
            tried = True
            ph2 = reach_profile(hat, r)
            for b in SIGNS:
                hat_set = ph2.R(b, -a) if hat_kind == "r" else ph2.any(b)
                g_set = pg.R(b, -a) if g_kind == "r" else pg.any(b)
                h_set = ph.R(b, -a) if hat_kind == "r" else ph.any(b)
                fails += _eq(f"{name} S={list(targets)} beta={b} outer", g_set - {s}, hat_set & gout)
                fails += _eq(f"{name} S={list(targets)} beta={b} inner", h_set, hat_set & h.graph.vertex_set)
    return fails if tried else None


def check_redge(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    g, r, a = rg.graph, rg.root, rg.sign
    before = _rsets(_prof(rg), a)
    fails, tried = [], False
    cut, _ = signed_cut(g, [r], a)
    for f in _subsets(sorted(cut), rng):
        tried = True
        after = _rsets(reach_profile(delete_edges(g, f), r), a)
        for b in SIGNS:
            fails += _eq(f"delete {list(f)} beta={b}", after[b], before[b])
    others = [v for v in g.vertices if v != r]
    specs = [(r, a, v, s) for v in others for s in SIGNS]
    batches = [[sp] for sp in specs]
    if len(specs) > 1:
        batches.append(rng.sample(specs, min(3, len(specs))))
    for batch in batches:
        tried = True
        after = _rsets(reach_profile(_add(g, batch), r), a)
        for b in SIGNS:
            fails += _eq(f"add {batch} beta={b}", after[b], before[b])
    return fails if tried else None


# ---------------------------------------------------------------------------
# Decomposition, construction and grammars
# ---------------------------------------------------------------------------


def check_decomp_thms(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    rep = class_report(rg)
    steps = []
    if rep.semiradial:
        steps.append(ABSOLUTE)
    if rep.sharp:
        steps.append(LINEAR)
    if rep.radial and rep.root_kind == "strong":
        steps.append(STRONG_KIND)
    if rep.round:
        steps.append(ALMOST_STRONG)
    if rep.radial and rep.root_kind == "sublinear":
        steps.append(EXTENDED)
    fails = []
    for step in steps:
        try:
            dec = decompose_step(rg, step)
        except DecompositionError as exc:
            fails.append(f"{step}: {exc}")
            continue
        try:
            back = dec.recompose(verify=True)
        except (CompositionError, GraphError) as exc:
            fails.append(f"{step} recompose: {exc}")
            continue
        if back.graph != rg.graph:
            fails.append(f"{step}: recomposition differs from the input")
    return fails


def _extra_for(kind: str, parts: Sequence[RootedGraph], rng: random.Random) -> list[Edge]:
    a = parts[0].sign
    out: list[Edge] = []
    n = rng.randint(0, 2)
    if kind in (ROUND, SUBLINEAR_ROOTED):
        g, h = parts
        pool = sorted(g.graph.vertex_set - {g.root})
        for i in range(n if pool else 0):
            out.append(Edge(f"w{i + 1}", h.root, a, rng.choice(pool), rng.choice(SIGNS)))
    elif kind == TRIPLEX:
        h1, h2, h3 = parts
        r = h1.root
        s2 = sorted(h2.graph.vertex_set - {r})
        other = sorted((h1.graph.vertex_set - {r}) | (h3.graph.vertex_set - {h3.root}))
        s3 = sorted(h3.graph.vertex_set - {h3.root})
        for i in range(n):
            if s2 and other and rng.random() < 0.5:
                out.append(Edge(f"w{i + 1}", rng.choice(s2), a, rng.choice(other), rng.choice(SIGNS)))
            elif s3:
                out.append(Edge(f"w{i + 1}", r, a, rng.choice(s3), rng.choice(SIGNS)))
    return out


COMPOSE_PARTS = {
    SHARP: ("round-radial", "linear-semiradial"),
    ROUND: ("sharp-semiradial", "almost-strong-radial"),
    SEMIRADIAL: ("sharp-semiradial", "absolute-semiradial"),
    STRONG_ROOTED: ("sharp-semiradial", "strong-radial"),
    SUBLINEAR_ROOTED: ("round-radial", "triplex"),
    TRIPLEX: ("almost-strong-radial", "sublinear-radial", "linear-semiradial"),
}


def _compose_instance(kind: str, parts: Instance, rng: random.Random) -> Outcome:
    try:
        targets = sorted(glue_targets(kind, parts))
    except GraphError:
        return None
    outer = parts[2] if kind == TRIPLEX else parts[0]
    assignment = {}
    for e in outer.graph.incident[outer.root]:
        if not targets:
            return None
        assignment[e.id] = (rng.choice(targets), rng.choice(targets)) if e.is_loop else rng.choice(targets)
    try:
        compose(kind, parts, assignment, _extra_for(kind, parts, rng), verify=True)
    except HypothesisError:
        return None
    except CompositionError as exc:
        return [str(exc)]
    return []


def check_const_thms(inst: Instance, rng: random.Random) -> Outcome:
    """Instances are ``(kind marker, *parts)``; the marker's root name carries the kind."""
    kind = inst[0].root
    return _compose_instance(kind, inst[1:], rng)


def check_grammar_sound(inst: Instance, rng: random.Random) -> Outcome:
    """Instance ``(marker, member)``: the marker root names the class the member must have."""
    cls = inst[0].root
    rg = inst[1]
    if rg.graph.n_edges > ditrail.ORACLE_MAX_EDGES:
        return None
    p = ditrail.oracle_reach_profile(rg.graph, rg.root)
    if not class_report(rg, p).has(cls):
        return [f"{cls} member fails its predicate under the oracle"]
    return []


def check_grammar_complete(inst: Instance, rng: random.Random) -> Outcome:
    (rg,) = inst
    rep = class_report(rg)
    fails = []
    tried = False
    if len(rg.graph) <= 3 and rg.graph.n_edges <= 3 and rg.root == "r" and set(rg.graph.vertices) <= {"r", "a", "b"}:
        for name in GRAMMARS:
            if rep.has(GRAMMAR_CLASS[name]):
                tried = True
                if shape_of(rg.graph) not in _grammar_cache(name, rg.sign):
                    fails.append(f"{GRAMMAR_CLASS[name]} member not produced by {name}")
    if rep.radial or rep.semiradial:
        tried = True
        try:
            tree = decompose_full(rg)
            back = tree.recompose()
        except (GraphError, CompositionError) as exc:
            return fails + [f"decomposition failed: {exc}"]
        if back.graph != rg.graph:
            fails.append("recomposed tree differs from the input")
        for leaf in tree.leaves():
            if leaf.label != "trivial" and not _is(leaf.graph, leaf.label):
                fails.append(f"leaf labelled {leaf.label} is not one")
    return fails if tried else None


@lru_cache(maxsize=None)
def _grammar_cache(name: str, alpha: Sign):
    return frozenset(grammar_shapes(name, alpha))


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

ANY = "any"
# sharp semiradials whose linear ground misses a vertex
SHARP_PROPER = "sharp-proper"

REGISTRY: dict[str, PropertyCheck] = {}


def _register(id: str, statement: str, family: str, fn, arity: int = 1) -> None:
    REGISTRY[id] = PropertyCheck(id, statement, family, fn, arity)


_register("L-edgeaddr", "Adding alpha-signed edges from non-strong vertices of an induced radial keeps the (beta,-alpha) reach sets.", ANY, check_edgeadd(False))
_register("L-edgeaddsr", "Adding alpha-signed edges from linear vertices of an induced semiradial keeps the beta reach sets.", ANY, check_edgeadd(True))
_register("L-r2delete", "Deleting alpha-signed cut edges of an induced radial keeps the (beta,-alpha) reach sets.", ANY, check_delete(False))
_register("L-sr2delete", "Deleting alpha-signed cut edges of an induced semiradial keeps the beta reach sets.", ANY, check_delete(True))
_register("L-nobypass", "No (-alpha,-alpha)-ditrail joins two sublinear (or two linear) vertices.", ANY, check_nobypass)
_register("L-oneadd", "A root ditrail through one added edge can be rerouted avoiding it and new cut edges.", ANY, check_oneadd)
_register("L-neigh2ear", "A neighbor with a ditrail to the root yields a diear through its edge.", "semiradial", check_neigh2ear)
_register("L-union", "Unions of (semi)radial subgraphs keep their class.", ANY, check_union)
_register("L-rnei2alt", "Root neighbors of a semiradial lie in the linear or absolute ground.", "semiradial", check_rnei2alt)
_register("L-abgnei2lin", "Neighbors of the absolute ground are linear.", "semiradial", check_abgnei2lin)
_register("L-lg2neigh", "Around a proper linear ground of a sharp semiradial there are only scoops.", SHARP_PROPER, check_lg2neigh)
_register("L-astg-neigh", "Neighbors of the strong or almost strong ground are sublinear.", "radial", check_astg_neigh)
_register("L-rrneigh2g", "Negative root neighbors lie in the almost strong ground or the first shell.", "radial-sublinear-root", check_rrneigh2g)
_register("L-shellneigh2strong", "No negative simple diear on the extended ground; its negative neighbors are strong.", "radial-sublinear-root", check_shellneigh2strong)
_register("L-obs-shell", "Degenerate shells force degenerate grounds.", "radial-sublinear-root", check_obs_shell)
_register("L-shell2path", "Ditrails from the shells to the root pass the way the shells prescribe.", "radial-sublinear-root", check_shell2path)
_register("L-shell-structure", "Shell parts are a sublinear radial and a linear semiradial with alpha-signed wiring.", "radial-sublinear-root", check_shell_structure)
_register("L-asg2neigh", "Negative root neighbors of a round radial lie in its almost strong ground.", "round-radial", check_asg2neigh)
_register("L-const4", "Ditrails to the root match ditrails into an induced subgraph avoiding its edges.", ANY, check_const4)
_register("L-quotient-paths", "Root ditrails match ditrails into each ground avoiding the ground's edges.", "semiradial", check_quotient_paths)
_register("L-glue-reach", "Gluing sums restrict reach sets to the parts.", "glue", check_glue_reach, arity=2)
_register("L-redge", "Adding or deleting alpha-signed root edges keeps the reach sets of a sublinear-root radial.", "radial-sublinear-root", check_redge)
_register("L-decomp-thms", "Contracting each ground gives the promised quotient class and inverts exactly.", "semiradial", check_decomp_thms)
_register("L-const-thms", "Each construction produces its promised class and ground.", "compose", check_const_thms, arity=0)
_register("L-grammar-sound", "Grammar and generator outputs pass their definitional predicates under the oracle.", "grammar", check_grammar_sound, arity=0)
_register("L-grammar-complete", "Class members are grammar members at tiny scale and decompose into principal leaves.", "semiradial", check_grammar_complete)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def _member(rg: RootedGraph, family: str) -> bool:
    if family == ANY:
        return True
    rep = class_report(rg)
    if family == SHARP_PROPER:
        return rep.sharp and len(ground(rg, LINEAR).graph) < len(rg.graph)
    return CLASS_TESTS[family](rep)


@lru_cache(maxsize=None)
def _tiny(max_vertices: int, max_edges: int) -> tuple[RootedGraph, ...]:
    return tuple(tiny_rooted(max_vertices, max_edges))


@lru_cache(maxsize=None)
def _tiny_family(family: str, max_vertices: int, max_edges: int) -> tuple[RootedGraph, ...]:
    return tuple(rg for rg in _tiny(max_vertices, max_edges) if _member(rg, family))


def _outer(rg: RootedGraph, tag: str = "g_") -> RootedGraph:
    out, _ = disjoint_copy(rg, tag)
    return out


def _marker(name: str) -> RootedGraph:
    return RootedGraph(BidirectedGraph([name]), name)


def _tiny_instances(check: PropertyCheck, b: Bounds) -> Iterator[Instance]:
    if check.family == "glue":
        outers = [rg for rg in _tiny(2, 2) if _member(rg, "sharp-semiradial") or _member(rg, "radial-sublinear-root")]
        inners = [rg for rg in _tiny(b.tiny_vertices, 2) if _member(rg, "semiradial")]
        for g in outers:
            for h in inners:
                if g.sign == h.sign:
                    yield (_outer(g), h)
        return
    if check.family == "compose":
        for kind, classes in COMPOSE_PARTS.items():
            if kind == TRIPLEX:
                p1 = [rg for rg in _tiny(2, 2) if _member(rg, classes[0])]
                p2 = [rg for rg in _tiny(2, 1) if _member(rg, classes[1])]
                p3 = [rg for rg in _tiny(2, 1) if _member(rg, classes[2])]
                for h1, h2, h3 in itertools.product(p1, p2, p3):
                    if h1.sign == h2.sign == h3.sign:
                        yield (_marker(kind), h1, disjoint_copy(h2, "m_", keep_root=True)[0], _outer(h3, "t_"))
            else:
                outers = [rg for rg in _tiny(2, 2) if _member(rg, classes[0])]
                inners = [rg for rg in _tiny(b.tiny_vertices, 2) if _member(rg, classes[1])]
                for g, h in itertools.product(outers, inners):
                    if g.sign == h.sign:
                        yield (_marker(kind), _outer(g), h)
        return
    if check.family == "grammar":
        for name in GRAMMARS:
            for alpha in SIGNS:
                for sh in sorted(_grammar_cache(name, alpha)):
                    yield (_marker(GRAMMAR_CLASS[name]), RootedGraph(graph_of(sh), "r", alpha))
        return
    for rg in _tiny_family(check.family, b.tiny_vertices, b.tiny_edges):
        yield (rg,)


def _random_member(rng: random.Random, family: str, b: Bounds, max_vertices: int | None = None) -> RootedGraph:
    nv = max_vertices or b.max_vertices
    if rng.random() < 0.2:
        return random_rooted(rng, nv, b.max_edges)
    if family == SHARP_PROPER:
        family = "sharp-semiradial"
    if family in (ANY, "radial"):
        pool = CLASSES if family == ANY else ("strong-radial", "almost-strong-radial", "round-radial", "sublinear-radial", "radial-strong-root", "radial-sublinear-root", "triplex")
        cls = rng.choice(pool)
    elif family == "semiradial":
        cls = rng.choice(CLASSES)
    else:
        cls = family
    try:
        return generate(cls, rng.randint(1, nv), rng.getrandbits(32), rng.choice(SIGNS), b.max_edges)
    except (GenerationError, GraphError):
        return random_rooted(rng, nv, b.max_edges)


def _random_instances(check: PropertyCheck, b: Bounds, rng: random.Random) -> Iterator[Instance]:
    for _ in range(b.trials):
        if check.family == "glue":
            outer_cls = rng.choice(("sharp-semiradial", "radial-sublinear-root"))
            g = _random_member(rng, outer_cls, b, 4)
            h = _random_member(rng, "semiradial", b, 5)
            h = RootedGraph(h.graph, h.root, g.sign)
            yield (_outer(g), h)
        elif check.family == "compose":
            kind = rng.choice(sorted(COMPOSE_PARTS))
            classes = COMPOSE_PARTS[kind]
            alpha = rng.choice(SIGNS)
            parts = []
            for i, cls in enumerate(classes):
                size = rng.randint(1, 4)
                if kind == TRIPLEX and i == 2 and len(parts[0].graph) == 1:
                    size = 1
                if kind == SUBLINEAR_ROOTED and i == 1:
                    size = max(size, 2)
                try:
                    parts.append(generate(cls, size, rng.getrandbits(32), alpha, 8))
                except (GenerationError, GraphError):
                    parts.append(random_rooted(rng, size, 4))
            if kind == TRIPLEX:
                h2 = disjoint_copy(parts[1], "m_", keep_root=True)[0]
                h2 = RootedGraph(h2.graph.renamed({h2.root: parts[0].root}), parts[0].root, alpha)
                yield (_marker(kind), parts[0], h2, _outer(parts[2], "t_"))
            else:
                yield (_marker(kind), _outer(parts[0]), parts[1])
        elif check.family == "grammar":
            cls = rng.choice(CLASSES)
            try:
                rg = generate(cls, rng.randint(1, 10), rng.getrandbits(32), rng.choice(SIGNS), ditrail.ORACLE_MAX_EDGES)
            except (GenerationError, GraphError):
                rg = random_rooted(rng, 6, 8)
            yield (_marker(cls), rg)
        else:
            # a few redraws toward the ambient family; misses still count as skips
            rg = _random_member(rng, check.family, b)
            for _ in range(REDRAWS):
                if _member(rg, check.family):
                    break
                rg = _random_member(rng, check.family, b)
            yield (rg,)


def _hyp_family(check: PropertyCheck, inst: Instance) -> bool:
    """Ambient class membership counts as a hypothesis for randomly drawn instances."""
    if check.family in ("glue", "compose", "grammar"):
        return True
    return _member(inst[0], check.family)


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------


def _evaluate(check: PropertyCheck, inst: Instance, seed: str) -> Outcome:
    try:
        if not _hyp_family(check, inst):
            return None
        return check.assertion(inst, random.Random(seed))
    except HypothesisError:
        return None
    except Exception as exc:  # a crash inside the conclusion is a failure, not a skip
        return [f"{type(exc).__name__}: {exc}"]


def minimize(check: PropertyCheck, inst: Instance, seed: str) -> Instance:
    """Greedy edge deletion keeping the failure."""
    cur = list(inst)
    changed = True
    while changed:
        changed = False
        for i, part in enumerate(cur):
            for e in part.graph.edges:
                trial = cur[:i] + [part.with_graph(delete_edges(part.graph, [e.id]))] + cur[i + 1 :]
                out = _evaluate(check, tuple(trial), seed)
                if out:
                    cur = trial
                    changed = True
                    break
            if changed:
                break
    return tuple(cur)


def _serialize(inst: Instance) -> str:
    blocks = []
    for part in inst:
        blocks.append(emit_bdg(part.graph, part.root, part.sign))
    return "\n".join(blocks)


def run_check(id: str, bounds: Bounds | None = None, seed: int = 0, shrink: bool = True) -> CheckReport:
    if id not in REGISTRY:
        raise KeyError(f"unknown check {id!r}")
    b = bounds or Bounds()
    check = REGISTRY[id]
    rep = CheckReport(id, check.statement)
    rng = random.Random(f"{id}/{seed}")
    streams = []
    if b.exhaustive:
        streams.append(("tiny", _tiny_instances(check, b)))
    if b.trials:
        streams.append(("random", _random_instances(check, b, rng)))
    for label, stream in streams:
        for n, inst in enumerate(stream):
            key = f"{id}/{seed}/{label}/{n}"
            rep.instances += 1
            if label == "tiny":
                rep.tiny_instances += 1
            else:
                rep.random_instances += 1
            out = _evaluate(check, inst, key)
            if out is None:
                rep.skipped += 1
                continue
            if out:
                rep.failures += 1
                if rep.counterexample is None:
                    small = minimize(check, inst, key) if shrink else inst
                    rep.counterexample = _serialize(small)
                    rep.witness = (_evaluate(check, small, key) or out)[:5]
    return rep


@dataclass
class SuiteReport:
    checks: list[CheckReport]

    @property
    def failures(self) -> int:
        return sum(c.failures for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def low_rate(self, floor: float = MIN_RATE) -> list[str]:
        return [c.id for c in self.checks if c.rate < floor]

    def to_json(self) -> dict:
        return {
            "checks": [c.to_json() for c in self.checks],
            "failures": self.failures,
            "low_rate": self.low_rate(),
            "ok": self.ok,
        }


def run_all(bounds: Bounds | None = None, seed: int = 0, ids: Iterable[str] | None = None, shrink: bool = True) -> SuiteReport:
    chosen = list(ids) if ids is not None else list(REGISTRY)
    return SuiteReport([run_check(i, bounds, seed, shrink) for i in chosen])


# ---------------------------------------------------------------------------
# Mutation harness
# ---------------------------------------------------------------------------


def _corrupt_reach(adj, root, mask):
    """The reach search with every loop edge ignored."""
    pruned = [[t for t in row if t[2] != i] for i, row in enumerate(adj)]
    return _REAL_REACH(pruned, root, mask)


_REAL_REACH = ditrail._reach


@contextlib.contextmanager
def mutated_engine():
    """Swap in a deliberately broken reach search (loops dropped) for the duration."""
    _clear_caches()
    ditrail._reach = _corrupt_reach
    try:
        yield
    finally:
        ditrail._reach = _REAL_REACH
        _clear_caches()


def _clear_caches() -> None:
    ditrail.compiled.cache_clear()
    _tiny_family.cache_clear()
    _grammar_cache.cache_clear()


__all__ = [
    "Bounds",
    "PropertyCheck",
    "CheckReport",
    "SuiteReport",
    "REGISTRY",
    "MIN_RATE",
    "run_check",
    "run_all",
    "minimize",
    "mutated_engine",
    "vertex_table",
]
