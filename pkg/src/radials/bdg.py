"""Reading and writing the line-oriented BDG graph format.

::

    bdg 1
    # comment
    vertex r
    vertex a
    edge e1 a + r -
    root r
    sign +

Ground output appends ``shell1 <v>...`` / ``shell2 <v>...`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .graph import BidirectedGraph, Edge, GraphError, RootedGraph, Sign


class BDGParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class BDGDocument:
    graph: BidirectedGraph
    root: str | None = None
    sign: Sign | None = None
    shells: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def rooted(self, root: str | None = None, sign: Sign | None = None) -> RootedGraph:
        root = root if root is not None else self.root
        if root is None:
            raise GraphError("no root given in file or on the command line")
        sign = sign if sign is not None else (self.sign if self.sign is not None else Sign.PLUS)
        return RootedGraph(self.graph, root, sign)


def parse_bdg(text: str) -> BDGDocument:
    vertices: list[str] = []
    seen_v: set[str] = set()
    edges: list[Edge] = []
    seen_e: set[str] = set()
    root = sign = None
    shells: dict[str, tuple[str, ...]] = {}
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw, args = tok[0], tok[1:]
        if not header:
            if kw != "bdg" or args != ["1"]:
                raise BDGParseError(lineno, "expected header 'bdg 1'")
            header = True
            continue
        if kw == "vertex":
            if len(args) != 1:
                raise BDGParseError(lineno, "vertex takes one name")
            if args[0] in seen_v:
                raise BDGParseError(lineno, f"duplicate vertex {args[0]!r}")
            seen_v.add(args[0])
            vertices.append(args[0])
        elif kw == "edge":
            if len(args) != 5:
                raise BDGParseError(lineno, "edge takes: <id> <u> <+|-> <v> <+|->")
            eid, u, su, v, sv = args
            if eid in seen_e:
                raise BDGParseError(lineno, f"duplicate edge id {eid!r}")
            for end in (u, v):
                if end not in seen_v:
                    raise BDGParseError(lineno, f"edge {eid!r} references undeclared vertex {end!r}")
            try:
                edges.append(Edge(eid, u, Sign.parse(su), v, Sign.parse(sv)))
            except GraphError as exc:
                raise BDGParseError(lineno, str(exc)) from None
            seen_e.add(eid)
        elif kw == "root":
            if len(args) != 1 or root is not None:
                raise BDGParseError(lineno, "root must appear once with one name")
            root = args[0]
        elif kw == "sign":
            if len(args) != 1 or sign is not None:
                raise BDGParseError(lineno, "sign must appear once with + or -")
            try:
                sign = Sign.parse(args[0])
            except GraphError as exc:
                raise BDGParseError(lineno, str(exc)) from None
        elif kw in ("shell1", "shell2"):
            shells[kw] = tuple(args)
        else:
            raise BDGParseError(lineno, f"unknown keyword {kw!r}")
    if not header:
        raise BDGParseError(1, "empty document")
    if root is not None and root not in seen_v:
        raise GraphError(f"root {root!r} is not a declared vertex")
    return BDGDocument(BidirectedGraph(vertices, edges), root, sign, shells)


def read_bdg(path: str | Path) -> BDGDocument:
    return parse_bdg(Path(path).read_text())


def emit_bdg(
    graph: BidirectedGraph,
    root: str | None = None,
    sign: Sign | None = None,
    shells: dict[str, tuple[str, ...]] | None = None,
) -> str:
    lines = ["bdg 1"]
    lines += [f"vertex {v}" for v in graph.vertices]
    lines += [f"edge {e.id} {e.u} {e.su} {e.v} {e.sv}" for e in graph.edges]
    if root is not None:
        lines.append(f"root {root}")
    if sign is not None:
        lines.append(f"sign {Sign(sign)}")
    for key in ("shell1", "shell2"):
        if shells and key in shells:
            lines.append(" ".join([key, *sorted(shells[key])]))
    return "\n".join(lines) + "\n"


def emit_rooted(rg: RootedGraph) -> str:
    return emit_bdg(rg.graph, rg.root, rg.sign)
