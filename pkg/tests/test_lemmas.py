import pytest

from radials.lemmas import REGISTRY, Bounds, mutated_engine, run_all, run_check

SMALL = Bounds(trials=15)


def test_registry_covers_all_checks():
    assert len(REGISTRY) == 26
    assert all(c.statement and c.family for c in REGISTRY.values())


@pytest.mark.parametrize("cid", sorted(REGISTRY))
def test_each_check_passes_small(cid):
    rep = run_check(cid, SMALL, seed=1)
    assert rep.ok, rep.counterexample
    assert rep.instances > 0


def test_unknown_check():
    with pytest.raises(KeyError):
        run_check("L-nope", SMALL)


def test_reports_are_deterministic():
    ids = ["L-nobypass", "L-glue-reach", "L-redge"]
    a = run_all(SMALL, seed=5, ids=ids).to_json()
    b = run_all(SMALL, seed=5, ids=ids).to_json()
    assert a == b


def test_mutated_engine_is_caught():
    with mutated_engine():
        rep = run_check("L-nobypass", Bounds(trials=20), seed=0)
    assert not rep.ok
    assert rep.counterexample is not None
    # the engine is restored afterwards
    assert run_check("L-nobypass", SMALL, seed=0).ok


def test_mutation_counterexample_is_minimized():
    with mutated_engine():
        rep = run_check("L-nobypass", Bounds(trials=20), seed=0)
    cx = rep.to_json()["counterexample"]
    assert [ln for ln in cx.splitlines() if ln.startswith("edge")] == ["edge e1 r + r +"]
