"""Seeded generators for every class.

Principal classes with a grammar grow by random diears (absolute
semiradials, strong radials) or by the three clauses of the almost strong
grammar.  Round radials and sharp semiradials follow the mutually recursive
grammar, and the compound classes glue parts together the way the
characterization theorems describe.  Linear semiradials and sublinear
radials have no grammar here; they are sampled by growing a sign-constrained
tree and adding random edges that keep the defining predicate.

Every output is re-checked with :func:`class_report` before it is returned;
a failed check (or a blown edge budget) retries with the same random stream.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from ..classify import class_report, graph_class_bits
from ..ditrail import compiled
from ..graph import (
    PLUS,
    SIGNS,
    BidirectedGraph,
    Edge,
    GraphError,
    RootedGraph,
    Sign,
    add_edges,
    gluing_sum,
    union,
)
from ..grounds import EXTENDED, ground

CLASSES = (
    "absolute-semiradial",
    "strong-radial",
    "almost-strong-radial",
    "round-radial",
    "linear-semiradial",
    "sublinear-radial",
    "semiradial",
    "radial-strong-root",
    "radial-sublinear-root",
    "triplex",
    "sharp-semiradial",
)

MAX_ATTEMPTS = 500


class GenerationError(GraphError):
    pass


@dataclass
class _Ctx:
    rng: random.Random
    alpha: Sign
    extra: float = 0.35
    _vertices: itertools.count = field(default_factory=lambda: itertools.count(1))
    _edges: itertools.count = field(default_factory=lambda: itertools.count(1))

    def vertex(self) -> str:
        return f"x{next(self._vertices):05d}"

    def edge(self, u: str, su: Sign, v: str, sv: Sign) -> Edge:
        return Edge(f"g{next(self._edges):05d}", u, su, v, sv)

    def sign(self) -> Sign:
        return self.rng.choice(SIGNS)

    def coin(self, p: float) -> bool:
        return self.rng.random() < p

    def extras(self) -> int:
        """Geometric number of optional additions."""
        k = 0
        while k < 4 and self.coin(self.extra):
            k += 1
        return k

    def split(self, total: int, parts: int, minimum: int = 1) -> list[int]:
        """Random composition of ``total`` into ``parts`` summands, each at least ``minimum``."""
        free = total - parts * minimum
        if free < 0:
            raise GenerationError("size split infeasible")
        cuts = sorted(self.rng.randint(0, free) for _ in range(parts - 1))
        bounds = [0, *cuts, free]
        return [minimum + bounds[i + 1] - bounds[i] for i in range(parts)]


# ---------------------------------------------------------------------------
# Diear construction
# ---------------------------------------------------------------------------


def _path_ear(ctx: _Ctx, u: str, w: str, k: int, first: Sign | None = None, last: Sign | None = None):
    """Simple diear from ``u`` to ``w`` through ``k`` new vertices (detour loops allowed)."""
    inner = [ctx.vertex() for _ in range(k)]
    seq = [u, *inner, w]
    edges = []
    dep = first if first is not None else ctx.sign()
    for i in range(len(seq) - 1):
        a, b = seq[i], seq[i + 1]
        arr = last if (i == len(seq) - 2 and last is not None) else ctx.sign()
        edges.append(ctx.edge(a, dep, b, arr))
        dep = -arr
        if i < len(seq) - 2 and ctx.coin(0.15):
            # detour loop at the interior vertex b
            back = ctx.sign()
            edges.append(ctx.edge(b, dep, b, back))
            dep = -back
    return inner, edges


def _scoop_ear(ctx: _Ctx, y: str, k: int):
    """Scoop diear gripping ``y``: grip edge to a new vertex plus a closed coherent walk there."""
    x = ctx.vertex()
    t = ctx.sign()
    grip = ctx.edge(y, ctx.sign(), x, t)
    # closed walk at x leaving with -t and arriving with -t
    inner, walk = _path_ear(ctx, x, x, k - 1, first=-t, last=-t)
    return [x, *inner], [grip, *walk]


def _random_ear(ctx: _Ctx, base: list[str], k: int):
    """A random diear relative to ``base`` with exactly ``k`` new vertices."""
    if k >= 1 and ctx.coin(0.3):
        return _scoop_ear(ctx, ctx.rng.choice(base), k)
    u, w = ctx.rng.choice(base), ctx.rng.choice(base)
    return _path_ear(ctx, u, w, k)


def _accrete(ctx: _Ctx, vertices: list[str], edges: list[Edge], n: int) -> BidirectedGraph:
    """Add random diears until there are ``n`` vertices, then a few vertex-free ones.

    A single vertex stays bare so the smallest outputs are the grammar bases.
    """
    vertices, edges = list(vertices), list(edges)
    while len(vertices) < n:
        room = n - len(vertices)
        k = min(room, 1 + int(ctx.rng.expovariate(0.8)))
        new, es = _random_ear(ctx, vertices, k)
        vertices += new
        edges += es
    if len(vertices) > 1:
        for _ in range(ctx.extras()):
            _, es = _path_ear(ctx, ctx.rng.choice(vertices), ctx.rng.choice(vertices), 0)
            edges += es
    return BidirectedGraph(vertices, edges)


# ---------------------------------------------------------------------------
# Grammar classes
# ---------------------------------------------------------------------------


def _absolute(ctx: _Ctx, n: int) -> RootedGraph:
    r = ctx.vertex()
    return RootedGraph(_accrete(ctx, [r], [], n), r, ctx.alpha)


def _strong(ctx: _Ctx, n: int, alpha: Sign | None = None) -> RootedGraph:
    a = ctx.alpha if alpha is None else alpha
    r = ctx.vertex()
    k = ctx.rng.randint(0, n - 1)
    inner, edges = _path_ear(ctx, r, r, k, first=-a, last=-a)
    return RootedGraph(_accrete(ctx, [r, *inner], edges, n), r, a)


def _almost_strong(ctx: _Ctx, n: int) -> RootedGraph:
    a = ctx.alpha
    r = ctx.vertex()
    vertices, edges = [r], []
    if n > 1:
        parts = ctx.rng.randint(1, min(3, n - 1))
        for m in ctx.split(n - 1, parts):
            beta = ctx.sign()
            part = _strong(ctx, m, beta)
            vertices += part.graph.vertices
            edges += part.graph.edges
            edges.append(ctx.edge(r, -a, part.root, beta))
    for _ in range(ctx.extras()):
        v = ctx.rng.choice(vertices)
        edges.append(ctx.edge(r, a, v, ctx.sign()))
    return RootedGraph(BidirectedGraph(vertices, edges), r, a)


def _glue(ctx: _Ctx, outer: RootedGraph, inner: RootedGraph, targets: list[str]) -> BidirectedGraph:
    assignment = {}
    for e in outer.graph.incident[outer.root]:
        if e.is_loop:
            assignment[e.id] = (ctx.rng.choice(targets), ctx.rng.choice(targets))
        else:
            assignment[e.id] = ctx.rng.choice(targets)
    return gluing_sum(outer.graph, outer.root, inner.graph, targets, assignment)


def _root_edges(ctx: _Ctx, rg: RootedGraph, pool: list[str]) -> RootedGraph:
    """Some edges ``rv`` (``v`` in ``pool``) whose ``r`` end has sign alpha."""
    if not pool:
        return rg
    extra = [ctx.edge(rg.root, ctx.alpha, ctx.rng.choice(pool), ctx.sign()) for _ in range(ctx.extras())]
    return rg.with_graph(add_edges(rg.graph, extra))


def _round(ctx: _Ctx, n: int, root_loops: bool = True) -> RootedGraph:
    if n >= 3 and ctx.coin(0.5):
        n_h = ctx.rng.randint(2, n - 1)
        g = _sharp(ctx, n - n_h + 1)
        h = _almost_strong(ctx, n_h)
        targets = sorted(h.graph.vertex_set - {h.root})
        out = RootedGraph(_glue(ctx, g, h, targets), h.root, ctx.alpha)
    else:
        out = _almost_strong(ctx, n)
        if not root_loops:
            out = out.with_graph(out.graph.subgraph(out.graph.vertices, [e.id for e in out.graph.edges if not (e.is_loop and e.u == out.root)]))
    pool = sorted(out.graph.vertex_set if root_loops else out.graph.vertex_set - {out.root})
    return _root_edges(ctx, out, pool)


def _sharp(ctx: _Ctx, n: int) -> RootedGraph:
    if n >= 3 and ctx.coin(0.5):
        n_h = ctx.rng.randint(2, n - 1)
        g = _round(ctx, n - n_h + 1, root_loops=False)
        h = _linear(ctx, n_h)
        targets = sorted(h.graph.vertex_set - {h.root})
        return RootedGraph(_glue(ctx, g, h, targets), h.root, ctx.alpha)
    return _linear(ctx, n)


# ---------------------------------------------------------------------------
# Filtered sampling
# ---------------------------------------------------------------------------


def _tree_sample(ctx: _Ctx, n: int, keep: Callable[[dict], bool]) -> RootedGraph:
    a = ctx.alpha
    r = ctx.vertex()
    vertices, edges = [r], []
    for _ in range(n - 1):
        p = ctx.rng.choice(vertices)
        v = ctx.vertex()
        vertices.append(v)
        edges.append(ctx.edge(v, a, p, -a))
    g = BidirectedGraph(vertices, edges)
    for _ in range(3 * ctx.extras()):
        u = ctx.rng.choice(vertices)
        w = u if ctx.coin(0.15) else ctx.rng.choice(vertices)
        cand = add_edges(g, [ctx.edge(u, ctx.sign(), w, ctx.sign())])
        if keep(graph_class_bits(compiled(cand), r, a)):
            g = cand
    return RootedGraph(g, r, a)


def _linear(ctx: _Ctx, n: int) -> RootedGraph:
    return _tree_sample(ctx, n, lambda b: b["linear-semiradial"])


def _sublinear(ctx: _Ctx, n: int) -> RootedGraph:
    return _tree_sample(ctx, n, lambda b: b["sublinear-radial"])


# ---------------------------------------------------------------------------
# Compound classes
# ---------------------------------------------------------------------------


def _semiradial(ctx: _Ctx, n: int) -> RootedGraph:
    n_h = ctx.rng.randint(1, n)
    g = _sharp(ctx, n - n_h + 1)
    h = _absolute(ctx, n_h)
    return RootedGraph(_glue(ctx, g, h, sorted(h.graph.vertex_set)), h.root, ctx.alpha)


def _strong_root(ctx: _Ctx, n: int) -> RootedGraph:
    n_h = ctx.rng.randint(1, n)
    g = _sharp(ctx, n - n_h + 1)
    h = _strong(ctx, n_h)
    return RootedGraph(_glue(ctx, g, h, sorted(h.graph.vertex_set)), h.root, ctx.alpha)


def _triplex(ctx: _Ctx, n: int, need_shell: bool = False) -> RootedGraph:
    a = ctx.alpha
    while True:
        n1, n2, n3 = ctx.split(n + 2, 3)
        if n1 == 1 and n3 > 1:
            continue
        if need_shell and n2 == 1 and n3 == 1:
            if n == 1:
                raise GenerationError("a triplex with a nonempty shell needs at least 2 vertices")
            continue
        break
    h1 = _almost_strong(ctx, n1)
    r = h1.root
    h2 = _sublinear(ctx, n2)
    h2g = h2.graph.renamed({h2.root: r})
    h3 = _linear(ctx, n3)
    body = union(h1.graph, h2g)
    targets = sorted(h1.graph.vertex_set - {r})
    g = _glue(ctx, h3, RootedGraph(body, r, a), targets) if targets else body
    s2 = sorted(h2g.vertex_set - {r})
    other = sorted((h1.graph.vertex_set - {r}) | (h3.graph.vertex_set - {h3.root}))
    s3 = sorted(h3.graph.vertex_set - {h3.root})
    extra = []
    for _ in range(ctx.extras()):
        if s2 and other and ctx.coin(0.5):
            extra.append(ctx.edge(ctx.rng.choice(s2), a, ctx.rng.choice(other), ctx.sign()))
        elif s3:
            extra.append(ctx.edge(r, a, ctx.rng.choice(s3), ctx.sign()))
    return RootedGraph(add_edges(g, extra), r, a)


def _sublinear_root(ctx: _Ctx, n: int) -> RootedGraph:
    if n == 1 or ctx.coin(0.3):
        return _triplex(ctx, n)
    n_h = ctx.rng.randint(2, n)
    g = _round(ctx, n - n_h + 1, root_loops=False)
    h = _triplex(ctx, n_h, need_shell=True)
    shell = sorted(ground(h, EXTENDED).shell)
    out = RootedGraph(_glue(ctx, g, h, shell), h.root, ctx.alpha)
    return _root_edges(ctx, out, sorted(g.graph.vertex_set - {g.root}))


BUILDERS: dict[str, Callable[[_Ctx, int], RootedGraph]] = {
    "absolute-semiradial": _absolute,
    "strong-radial": _strong,
    "almost-strong-radial": _almost_strong,
    "round-radial": _round,
    "linear-semiradial": _linear,
    "sublinear-radial": _sublinear,
    "semiradial": _semiradial,
    "radial-strong-root": _strong_root,
    "radial-sublinear-root": _sublinear_root,
    "triplex": _triplex,
    "sharp-semiradial": _sharp,
}


def _canonical(rg: RootedGraph) -> RootedGraph:
    others = [v for v in rg.graph.vertices if v != rg.root]
    vmap = {rg.root: "r", **{v: f"v{i + 1}" for i, v in enumerate(others)}}
    emap = {e.id: f"e{i + 1}" for i, e in enumerate(rg.graph.edges)}
    return RootedGraph(rg.graph.renamed(vmap, emap), "r", rg.sign)


def generate(cls: str, size: int, seed: int = 0, alpha: Sign = PLUS, max_edges: int | None = None) -> RootedGraph:
    """A pseudorandom member of ``cls`` with exactly ``size`` vertices, root ``r``.

    ``max_edges`` caps the edge count (outputs over the cap are redrawn).
    """
    if cls not in BUILDERS:
        raise GraphError(f"unknown class {cls!r}; choose from {', '.join(CLASSES)}")
    if size < 1:
        raise GenerationError("size must be at least 1")
    if max_edges is not None and max_edges < size - 1:
        raise GenerationError(f"{size} vertices need at least {size - 1} edges")
    rng = random.Random(f"{cls}/{size}/{seed}/{int(alpha)}")
    for _ in range(MAX_ATTEMPTS):
        ctx = _Ctx(rng, alpha)
        rg = BUILDERS[cls](ctx, size)
        if len(rg.graph) != size:
            continue
        if max_edges is not None and rg.graph.n_edges > max_edges:
            continue
        if class_report(rg).has(cls):
            return _canonical(rg)
    raise GenerationError(f"no {cls} with {size} vertices found in {MAX_ATTEMPTS} attempts")


__all__ = ["CLASSES", "BUILDERS", "GenerationError", "generate"]
