"""Command-line entry point: ``radials <command> ...``.

Every command accepts ``--format json|text``.  Exit status is 0 on success,
1 when a property failed or a counterexample was found, and 2 on usage or
input errors (unparsable files, inputs outside a command's class).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path
from typing import Any

from .bdg import emit_bdg, parse_bdg
from .classify import CLASS_TESTS, class_report, vertex_table
from .ditrail import find_ditrail, oracle_reach_profile, reach_profile
from .dot import to_dot
from .families import random_rooted, tiny_rooted
from .graph import SIGNS, Edge, GraphError, RootedGraph, Sign
from .grounds import KINDS, METHODS, GuardError, ground
from .lemmas import REGISTRY, Bounds, mutated_engine, run_all
from .transform.compose import COMPOSE_KINDS, CompositionError, compose_detailed
from .transform.decompose import DecompositionNode, decompose_full, decompose_step
from .transform.generate import CLASSES, GenerationError, generate

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("RADIAL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RADIAL_SEED must be an integer, got {raw!r}") from None


def _sign(text: str) -> Sign:
    try:
        return Sign.parse(text)
    except (ValueError, GraphError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> tuple[str, dict]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return data.decode("utf-8"), {"file": path, "sha256": hashlib.sha256(data).hexdigest()}


def _load(path: str, root: str | None, sign: Sign | None) -> tuple[RootedGraph, dict]:
    text, digest = _read(path)
    doc = parse_bdg(text)
    return doc.rooted(root, sign), digest


def _emit(rg: RootedGraph, shells: dict | None = None) -> str:
    return emit_bdg(rg.graph, rg.root, rg.sign, shells)


class Output:
    """Collects a report and prints it in the chosen format."""

    def __init__(self, fmt: str, command: str, args: dict):
        self.fmt = fmt
        self.report: dict[str, Any] = {"command": command, "args": args}
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self, stream) -> None:
        if self.fmt == "json":
            stream.write(json.dumps(self.report, indent=2, sort_keys=True) + "\n")
        else:
            body = "\n".join(self.lines)
            stream.write(body if body.endswith("\n") else body + "\n")


def _echo(ns: argparse.Namespace) -> dict:
    skip = {"func", "format", "output"}
    out = {}
    for k, v in sorted(vars(ns).items()):
        if k in skip:
            continue
        out[k] = str(v) if isinstance(v, Sign) else v
    return out


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_classify(ns, out: Output) -> int:
    rg, digest = _load(ns.file, ns.root, ns.sign)
    p = oracle_reach_profile(rg.graph, rg.root) if ns.oracle else reach_profile(rg.graph, rg.root)
    rep = class_report(rg, p)
    table = vertex_table(rg, p)
    a = rg.sign
    witnesses = {}
    for v in rg.graph.vertices:
        w = find_ditrail(rg.graph, v, rg.root, a, -a)
        witnesses[v] = None if w is None else w.tokens()
    out.report.update(
        input=digest,
        root=rg.root,
        sign=str(a),
        classes=rep.to_json(),
        vertices={v: {"trail": c.trail_label, "strict": c.strict_label} for v, c in table.items()},
        witnesses=witnesses,
    )
    out.text(f"root {rg.root}  sign {a}  root-kind {rep.root_kind}")
    for name in CLASS_TESTS:
        out.text(f"  {name}: {'yes' if rep.has(name) else 'no'}")
    out.text("vertices:")
    for v, c in table.items():
        w = witnesses[v]
        out.text(f"  {v}: {c.trail_label}, {c.strict_label}" + (f"  via {w}" if w else ""))
    return OK


def cmd_ground(ns, out: Output) -> int:
    rg, digest = _load(ns.file, ns.root, ns.sign)
    try:
        gr = ground(rg, ns.kind, ns.method)
    except GuardError as exc:
        raise UsageError(str(exc)) from None
    bdg = emit_bdg(gr.graph, gr.root, gr.sign, gr.shells_dict())
    out.report.update(input=digest, ground=gr.to_json(), bdg=bdg)
    out.text(bdg.rstrip("\n"))
    return OK


def _tree_text(node: DecompositionNode, out: Output, depth: int = 0) -> None:
    g = node.graph.graph
    nv, ne = len(g), g.n_edges
    detail = f"{nv} {'vertex' if nv == 1 else 'vertices'}, {ne} {'edge' if ne == 1 else 'edges'}"
    how = ""
    if node.step is not None:
        how = f" [{node.step.step} ground]"
    elif node.split is not None:
        how = " [triplex split]"
    out.text(f"{'  ' * depth}{node.label}{how}: {detail}  {{{', '.join(g.vertices)}}}")
    for child in node.children:
        _tree_text(child, out, depth + 1)


def cmd_decompose(ns, out: Output) -> int:
    rg, digest = _load(ns.file, ns.root, ns.sign)
    out.report["input"] = digest
    if ns.step:
        dec = decompose_step(rg, ns.step)
        back = dec.recompose()
        ok = back.graph == rg.graph
        out.report.update(decomposition=dec.to_json(), roundtrip=ok)
        out.text(f"{dec.step} ground:")
        out.text(_emit(dec.ground.rooted, dec.ground.shells_dict()).rstrip("\n"))
        out.text("quotient:")
        out.text(_emit(dec.quotient).rstrip("\n"))
        out.text(f"roundtrip: {'ok' if ok else 'FAILED'}")
        return OK if ok else FAILED
    tree = decompose_full(rg, ns.mode)
    back = tree.recompose()
    ok = back.graph == rg.graph
    out.report.update(tree=tree.to_json(), leaves=[leaf.label for leaf in tree.leaves()], roundtrip=ok)
    _tree_text(tree, out)
    out.text(f"roundtrip: {'ok' if ok else 'FAILED'}")
    return OK if ok else FAILED


def _job_part(entry, base: Path, digests: list) -> RootedGraph:
    if isinstance(entry, str):
        entry = {"file": entry}
    if not isinstance(entry, dict):
        raise UsageError("each part must be a file name or an object")
    if "bdg" in entry:
        text = entry["bdg"]
        digests.append({"inline": True, "sha256": hashlib.sha256(text.encode()).hexdigest()})
    elif "file" in entry:
        text, digest = _read(str(base / entry["file"]))
        digest["file"] = entry["file"]
        digests.append(digest)
    else:
        raise UsageError("a part needs 'file' or 'bdg'")
    sign = Sign.parse(entry["sign"]) if "sign" in entry else None
    return parse_bdg(text).rooted(entry.get("root"), sign)


def _job_edge(item) -> Edge:
    if isinstance(item, dict):
        return Edge(item["id"], item["u"], Sign.parse(item["su"]), item["v"], Sign.parse(item["sv"]))
    if isinstance(item, list) and len(item) == 5:
        eid, u, su, v, sv = item
        return Edge(eid, u, Sign.parse(su), v, Sign.parse(sv))
    raise UsageError(f"bad extra edge {item!r}; use [id, u, sign, v, sign]")


def cmd_compose(ns, out: Output) -> int:
    """Run a JSON job::

        {"kind": "sharp", "parts": ["outer.bdg", "inner.bdg"],
         "assignment": {"e1": "a", "loop1": ["a", "b"]},
         "extra_edges": [["w1", "r", "+", "v", "-"]], "verify": true}
    """
    text, digest = _read(ns.job)
    try:
        job = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ns.job}: {exc}") from None
    if not isinstance(job, dict):
        raise UsageError("a compose job must be a JSON object")
    kind = job.get("kind")
    if kind not in COMPOSE_KINDS:
        raise UsageError(f"job kind must be one of {', '.join(COMPOSE_KINDS)}")
    base = Path(ns.job).parent
    digests: list = []
    parts = [_job_part(p, base, digests) for p in job.get("parts", [])]
    assignment = {k: (tuple(v) if isinstance(v, list) else v) for k, v in job.get("assignment", {}).items()}
    extra = [_job_edge(e) for e in job.get("extra_edges", [])]
    verify = job.get("verify", True) if not ns.no_verify else False
    try:
        res = compose_detailed(kind, parts, assignment, extra, verify)
    except CompositionError as exc:
        out.report.update(input=digest, parts=digests, error=str(exc))
        out.text(f"composition failed its conclusion: {exc}")
        return FAILED
    bdg = _emit(res.result)
    out.report.update(
        input=digest,
        parts=digests,
        kind=kind,
        targets=sorted(res.targets),
        verified=res.verified,
        classes=class_report(res.result).to_json(),
        bdg=bdg,
    )
    out.text(bdg.rstrip("\n"))
    return OK


def cmd_generate(ns, out: Output) -> int:
    seed = _default_seed() if ns.seed is None else ns.seed
    try:
        rg = generate(ns.cls, ns.vertices, seed, ns.sign, ns.max_edges)
    except GenerationError as exc:
        raise UsageError(str(exc)) from None
    rep = class_report(rg)
    ok = rep.has(ns.cls)
    bdg = _emit(rg)
    out.report.update(seed=seed, bdg=bdg, classes=rep.to_json(), verified=ok)
    out.text(bdg.rstrip("\n"))
    return OK if ok else FAILED


def cmd_verify(ns, out: Output) -> int:
    seed = _default_seed() if ns.seed is None else ns.seed
    if ns.list:
        out.report["checks"] = {k: c.statement for k, c in REGISTRY.items()}
        for k, c in REGISTRY.items():
            out.text(f"{k}: {c.statement}")
        return OK
    ids = ns.lemma or None
    if ids:
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise UsageError(f"unknown check(s): {', '.join(unknown)}")
    bounds = Bounds(trials=ns.trials, exhaustive=not ns.no_tiny)
    if ns.mutate:
        with mutated_engine():
            suite = run_all(bounds, seed, ids, shrink=not ns.no_shrink)
    else:
        suite = run_all(bounds, seed, ids, shrink=not ns.no_shrink)
    out.report.update(seed=seed, mutated=ns.mutate, **suite.to_json())
    for c in suite.checks:
        flag = "ok  " if c.ok else "FAIL"
        out.text(f"{flag} {c.id:22s} instances {c.instances:5d}  satisfied {c.rate:6.1%}  failures {c.failures}")
        if not c.ok:
            for w in c.witness:
                out.text(f"       {w}")
            out.text("       counterexample:")
            for line in (c.counterexample or "").splitlines():
                out.text(f"         {line}")
    low = suite.low_rate()
    if low:
        out.text(f"low hypothesis rate: {', '.join(low)}")
    out.text(f"{'all checks passed' if suite.ok else f'{suite.failures} failing instance(s)'}")
    return OK if suite.ok else FAILED


def _profile_mismatch(rg: RootedGraph) -> dict | None:
    fast = reach_profile(rg.graph, rg.root)
    slow = oracle_reach_profile(rg.graph, rg.root)
    if fast == slow:
        return None
    return {"bdg": _emit(rg), "engine": fast.to_json(), "oracle": slow.to_json()}


def cmd_oracle_diff(ns, out: Output) -> int:
    seed = _default_seed() if ns.seed is None else ns.seed
    mismatches = []
    exhaustive = 0
    for rg in tiny_rooted(ns.max_vertices, ns.max_edges, signs=(SIGNS[0],)):
        exhaustive += 1
        m = _profile_mismatch(rg)
        if m:
            mismatches.append(m)
    rng = random.Random(f"oracle-diff/{seed}")
    for _ in range(ns.trials):
        rg = random_rooted(rng, ns.random_vertices, ns.random_edges)
        m = _profile_mismatch(rg)
        if m:
            mismatches.append(m)
    out.report.update(
        seed=seed,
        exhaustive=exhaustive,
        random=ns.trials,
        mismatches=len(mismatches),
        examples=mismatches[:5],
    )
    out.text(f"exhaustive graphs: {exhaustive}  random graphs: {ns.trials}  mismatches: {len(mismatches)}")
    for m in mismatches[:5]:
        out.text(m["bdg"].rstrip("\n"))
    return OK if not mismatches else FAILED


def cmd_export_dot(ns, out: Output) -> int:
    rg, digest = _load(ns.file, ns.root, ns.sign)
    mark: frozenset[str] = frozenset()
    if ns.ground:
        mark = ground(rg, ns.ground).graph.vertex_set
    text = to_dot(rg.graph, rg.root, Path(ns.file).stem, mark)
    out.report.update(input=digest, dot=text)
    out.text(text.rstrip("\n"))
    return OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("file", help="BDG input file")
    graph_in.add_argument("--root", help="root vertex (overrides the file)")
    graph_in.add_argument("--sign", type=_sign, help="orientation + or - (overrides the file)")

    parser = argparse.ArgumentParser(prog="radials", description="Radials and semiradials of bidirected graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, graph_in], help="class membership and vertex classes")
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle (small graphs only)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ground", parents=[common, graph_in], help="compute a ground")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--method", choices=METHODS, default="peel")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("decompose", parents=[common, graph_in], help="decompose by grounds")
    p.add_argument("--step", choices=KINDS, help="a single ground step instead of the full tree")
    p.add_argument("--mode", choices=("auto", "radial", "semiradial"), default="auto")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compose", parents=[common], help="run a JSON composition job")
    p.add_argument("job", help="JSON job file")
    p.add_argument("--no-verify", action="store_true", help="skip checking the construction's conclusion")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("generate", parents=[common], help="generate a class member")
    p.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help="defaults to $RADIAL_SEED or 0")
    p.add_argument("--sign", type=_sign, default=SIGNS[0])
    p.add_argument("--max-edges", type=int, default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[common], help="run the lemma property checks")
    p.add_argument("target", nargs="?", choices=("suite",), help="run every check (the default)")
    p.add_argument("--lemma", action="append", help="check id; repeatable")
    p.add_argument("--trials", type=int, default=100, help="random instances per check")
    p.add_argument("--seed", type=int, default=None, help="defaults to $RADIAL_SEED or 0")
    p.add_argument("--no-tiny", action="store_true", help="skip the exhaustive tiny family")
    p.add_argument("--no-shrink", action="store_true", help="report counterexamples unminimized")
    p.add_argument("--mutate", action="store_true", help="run against a deliberately broken engine")
    p.add_argument("--list", action="store_true", help="list the registered checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-diff", parents=[common], help="compare the engine with the brute-force oracle")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--max-edges", type=int, default=3)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--random-vertices", type=int, default=6)
    p.add_argument("--random-edges", type=int, default=8)
    p.add_argument("--seed", type=int, default=None, help="defaults to $RADIAL_SEED or 0")
    p.set_defaults(func=cmd_oracle_diff)

    p = sub.add_parser("export-dot", parents=[common, graph_in], help="render as Graphviz DOT")
    p.add_argument("--ground", choices=KINDS, help="shade the vertices of this ground")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    out = Output(ns.format, ns.command, _echo(ns))
    try:
        status = ns.func(ns, out)
    except (UsageError, GraphError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"radials {ns.command}: error: {msg}", file=sys.stderr)
        return USAGE
    out.report["status"] = status
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            out.flush(fh)
    else:
        out.flush(sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
