"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in the
terminal summary (see ``conftest.py``) and also when this file is run as a
script.
"""

from __future__ import annotations

import json
import random
import sys

from radials.bdg import emit_bdg
from radials.classify import class_report
from radials.cli import main as cli_main
from radials.ditrail import oracle_reach_profile, reach_profile
from radials.families import random_rooted, tiny_graphs
from radials.fixtures import rooted
from radials.graph import SIGNS, GraphError, HypothesisError, RootedGraph
from radials.grounds import (
    ABSOLUTE,
    ALMOST_STRONG,
    EXTENDED,
    KINDS,
    LINEAR,
    STRONG_KIND,
    check_precondition,
    exact_ground,
    ground,
)
from radials.iso import are_isomorphic
from radials.lemmas import COMPOSE_PARTS, MIN_RATE, Bounds, run_all
from radials.transform import (
    CLASSES,
    COMPOSE_KINDS,
    GenerationError,
    compose,
    completeness,
    decompose_step,
    disjoint_copy,
    generate,
    glue_targets,
    split_triplex,
)
from radials.transform.compose import TRIPLEX
from radials.transform.decompose import STEP_INVERSE, STEP_QUOTIENT
from radials.transform.grammar import GRAMMARS

VERDICTS: dict[int, str] = {}

# generator class whose members meet each ground kind's precondition
KIND_SOURCE = {
    ABSOLUTE: "semiradial",
    LINEAR: "sharp-semiradial",
    STRONG_KIND: "radial-strong-root",
    ALMOST_STRONG: "round-radial",
    EXTENDED: "radial-sublinear-root",
}
GROUND_CLASS = {
    ABSOLUTE: "absolute-semiradial",
    LINEAR: "linear-semiradial",
    STRONG_KIND: "strong-radial",
    ALMOST_STRONG: "almost-strong-radial",
    EXTENDED: "triplex",
}
INVERSE_STEP = {v: k for k, v in STEP_INVERSE.items()}


def _record(n: int, title: str, failures: list[str], detail: str) -> None:
    verdict = "PASS" if not failures else "FAIL"
    VERDICTS[n] = f"criterion {n} {title}: {verdict} ({detail})"
    print(VERDICTS[n])
    assert not failures, failures[:5]


def _tiny_rooted():
    for g in tiny_graphs(3, 3):
        for a in SIGNS:
            yield RootedGraph(g, "r", a)


def _members(cls: str, count: int, max_vertices: int, max_edges: int, seed: int):
    rng = random.Random(f"{cls}:{seed}")
    out, attempt = [], 0
    while len(out) < count:
        attempt += 1
        try:
            out.append(generate(cls, rng.randint(1, max_vertices), attempt, rng.choice(SIGNS), max_edges))
        except GenerationError:
            if attempt > 50 * count:
                break
    return out


def test_criterion_1_engine_matches_oracle():
    failures, n = [], 0
    for g in tiny_graphs(3, 3):
        n += 1
        if reach_profile(g, "r") != oracle_reach_profile(g, "r"):
            failures.append(emit_bdg(g, "r"))
    rng = random.Random(1)
    for _ in range(500):
        g = random_rooted(rng, 6, 8).graph
        n += 1
        if reach_profile(g, "r") != oracle_reach_profile(g, "r"):
            failures.append(emit_bdg(g, "r"))
    _record(1, "engine/oracle equivalence", failures, f"{n} graphs, {len(failures)} mismatches")


EXPECTED = {
    "F0": {"absolute-semiradial", "almost-strong-radial", "linear-semiradial", "radial", "round", "semiradial",
           "sharp", "sublinear-radial", "triplex"},
    "F1": {"linear-semiradial", "radial", "semiradial", "sharp", "sublinear-radial", "triplex"},
    "F2": {"absolute-semiradial", "radial", "semiradial", "strong-radial"},
    "F3": {"linear-semiradial", "radial", "semiradial", "sharp", "sublinear-radial", "triplex"},
    "F6": {"absolute-semiradial", "almost-strong-radial", "radial", "round", "semiradial", "triplex"},
    "F7": {"absolute-semiradial", "almost-strong-radial", "radial", "round", "semiradial", "triplex"},
}


def _classes(rg: RootedGraph, oracle: bool) -> set[str]:
    prof = oracle_reach_profile(rg.graph, rg.root) if oracle else None
    rep = class_report(rg, prof).to_json()
    return {k for k, v in rep.items() if v is True}


def test_criterion_2_fixture_ground_truths():
    failures = []
    for name, want in EXPECTED.items():
        for oracle in (False, True):
            got = _classes(rooted(name), oracle)
            if got != want:
                failures.append(f"{name}: {sorted(got ^ want)}")
    _record(2, "fixture ground truths", failures, f"{len(EXPECTED)} fixtures")


def _applicable(rg: RootedGraph):
    for kind in KINDS:
        try:
            check_precondition(rg, kind)
        except GraphError:
            continue
        yield kind


def test_criterion_3_ground_maximality():
    failures, n = [], 0
    for rg in _tiny_rooted():
        for kind in _applicable(rg):
            n += 1
            if ground(rg, kind) != exact_ground(rg, kind):
                failures.append(f"{kind}: {emit_bdg(rg.graph, rg.root, rg.sign)}")
    for kind, cls in KIND_SOURCE.items():
        for rg in _members(cls, 200, 8, 10, seed=3):
            n += 1
            if ground(rg, kind) != exact_ground(rg, kind):
                failures.append(f"{kind}: {emit_bdg(rg.graph, rg.root, rg.sign)}")
    _record(3, "ground maximality", failures, f"{n} ground computations, {len(failures)} divergences")


def test_criterion_4_grammar_soundness():
    failures, n = [], 0
    for cls in CLASSES:
        members = _members(cls, 200, 10, 12, seed=4)
        if len(members) < 200:
            failures.append(f"{cls}: only {len(members)} outputs")
        for rg in members:
            n += 1
            prof = oracle_reach_profile(rg.graph, rg.root)
            if not class_report(rg, prof).has(cls):
                failures.append(f"{cls}: {emit_bdg(rg.graph, rg.root, rg.sign)}")
    _record(4, "grammar soundness", failures, f"{n} outputs, {len(failures)} failures")


def test_criterion_5_tiny_completeness():
    failures = []
    for name in GRAMMARS:
        for a in SIGNS:
            res = completeness(name, a)
            if res["grammar_only"] or res["predicate_only"]:
                failures.append(f"{name} {a}: {len(res['grammar_only'])}/{len(res['predicate_only'])}")
    _record(5, "tiny-scale grammar completeness", failures, f"{len(GRAMMARS)} grammars x 2 signs")


def _step_round_trip(rg: RootedGraph, step: str) -> list[str]:
    dec = decompose_step(rg, step)
    out = []
    if not class_report(dec.ground.rooted).has(GROUND_CLASS[step]):
        out.append(f"{step}: ground is not a {GROUND_CLASS[step]}")
    if not dec.quotient.is_trivial and not class_report(dec.quotient).has(STEP_QUOTIENT[step]):
        out.append(f"{step}: quotient is not a {STEP_QUOTIENT[step]}")
    back = dec.recompose(verify=True)
    if not are_isomorphic(back, rg):
        out.append(f"{step}: recomposition is not isomorphic to the input")
    return out


def _random_parts(kind: str, rng: random.Random, attempt: int):
    classes = COMPOSE_PARTS[kind]
    parts = []
    for i, cls in enumerate(classes):
        size = rng.randint(1 if i == 0 or kind == TRIPLEX else 2, 4)
        part = generate(cls, size, attempt, rng.choice(SIGNS) if i == 0 else SIGNS[0])
        if kind == TRIPLEX:
            if i == 1:
                part, _ = disjoint_copy(part, "m_", keep_root=True)
            elif i == 2:
                part, _ = disjoint_copy(part, "t_")
        elif i == 0:
            part, _ = disjoint_copy(part, "g_")
        parts.append(part)
    if kind == TRIPLEX:
        parts = [RootedGraph(p.graph, p.root, parts[1].sign) for p in parts]
    else:
        parts[0] = RootedGraph(parts[0].graph, parts[0].root, parts[1].sign)
    return parts


def _compose_round_trip(kind: str, rng: random.Random, attempt: int) -> list[str] | None:
    try:
        parts = _random_parts(kind, rng, attempt)
        targets = sorted(glue_targets(kind, parts))
        outer = parts[2] if kind == TRIPLEX else parts[0]
        assignment = {}
        for e in outer.graph.incident[outer.root]:
            if not targets:
                return None
            assignment[e.id] = (rng.choice(targets), rng.choice(targets)) if e.is_loop else rng.choice(targets)
        out = compose(kind, parts, assignment, verify=True)
    except (GenerationError, HypothesisError):
        return None
    if kind == TRIPLEX:
        sp = split_triplex(out)
        back = sp.recompose(verify=True)
        fails = [] if back.graph == out.graph else ["triplex: split does not recompose"]
        if not are_isomorphic(sp.h1, parts[0]):
            fails.append("triplex: first part is not the almost strong ground")
        return fails
    step = INVERSE_STEP[kind]
    fails = _step_round_trip(out, step)
    if not are_isomorphic(decompose_step(out, step).ground.rooted, parts[1]):
        fails.append(f"{kind}: ground differs from the inner part")
    return fails


def test_criterion_6_round_trips():
    failures, counts = [], {}
    for step, cls in KIND_SOURCE.items():
        members = _members(cls, 200, 10, 14, seed=6)
        counts[step] = len(members)
        for rg in members:
            try:
                failures.extend(_step_round_trip(rg, step))
            except GraphError as exc:
                failures.append(f"{step}: {exc}")
    for kind in COMPOSE_KINDS:
        rng = random.Random(kind)
        done = attempt = 0
        while done < 200 and attempt < 4000:
            attempt += 1
            try:
                res = _compose_round_trip(kind, rng, attempt)
            except GraphError as exc:
                res = [f"{kind}: {exc}"]
            if res is None:
                continue
            done += 1
            failures.extend(res)
        counts[kind] = done
        if done < 200:
            failures.append(f"{kind}: only {done} valid compositions")
    _record(6, "decomposition/composition round trips", failures,
            f"{sum(counts.values())} round trips, {len(failures)} failures")


def test_criterion_7_lemma_suite():
    report = run_all(Bounds(trials=100), seed=0)
    failures = [f"{c.id}: {c.counterexample}" for c in report.checks if not c.ok]
    failures += [f"{cid}: hypothesis rate below {MIN_RATE}" for cid in report.low_rate(MIN_RATE)]
    low = min(c.rate for c in report.checks)
    _record(7, "lemma suite", failures, f"{len(report.checks)} checks, lowest satisfaction {low:.2f}")


SEEDED = [
    ["generate", "--class", "triplex", "--vertices", "7", "--seed", "9", "--format", "json"],
    ["verify", "--lemma", "L-glue-reach", "--lemma", "L-redge", "--trials", "20", "--seed", "2", "--format", "json"],
    ["oracle-diff", "--max-vertices", "2", "--max-edges", "2", "--trials", "30", "--seed", "4", "--format", "json"],
]


def test_criterion_8_determinism(tmp_path):
    failures = []
    src = tmp_path / "g.bdg"
    src.write_text(emit_bdg(*_gen_for_determinism()))
    commands = SEEDED + [
        ["classify", str(src), "--format", "json"],
        ["decompose", str(src), "--format", "json"],
        ["export-dot", str(src), "--ground", "extended"],
    ]
    for i, argv in enumerate(commands):
        outs = []
        for rep in range(2):
            path = tmp_path / f"{i}-{rep}.out"
            code = cli_main(argv + ["-o", str(path)])
            outs.append((code, path.read_bytes()))
        if outs[0] != outs[1]:
            failures.append(" ".join(argv))
        if "json" in argv:
            json.loads(outs[0][1])
    _record(8, "determinism", failures, f"{len(commands)} seeded commands run twice")


def _gen_for_determinism():
    rg = generate("radial-sublinear-root", 7, 5)
    return rg.graph, rg.root, rg.sign


if __name__ == "__main__":
    import pytest

    code = pytest.main([__file__, "-q"])
    print("\n".join(VERDICTS[k] for k in sorted(VERDICTS)))
    sys.exit(code)
