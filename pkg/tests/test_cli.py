import json

import pytest

from radials.bdg import emit_bdg, parse_bdg
from radials.cli import main
from radials.fixtures import rooted


@pytest.fixture
def bdg(tmp_path):
    def write(name):
        rg = rooted(name)
        path = tmp_path / f"{name}.bdg"
        path.write_text(emit_bdg(rg.graph, rg.root, rg.sign))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys, bdg):
    code, out, _ = run(capsys, "classify", bdg("F3"), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == 0
    assert rep["classes"]["triplex"] and not rep["classes"]["round"]
    assert rep["classes"]["root-kind"] == "sublinear"
    assert len(rep["input"]["sha256"]) == 64


def test_classify_oracle_matches_engine(capsys, bdg):
    path = bdg("F7")
    _, a, _ = run(capsys, "classify", path, "--format", "json")
    _, b, _ = run(capsys, "classify", path, "--format", "json", "--oracle")
    assert json.loads(a)["classes"] == json.loads(b)["classes"]


def test_ground_text_reparses(capsys, bdg):
    code, out, _ = run(capsys, "ground", bdg("F3"), "--kind", "extended")
    assert code == 0
    doc = parse_bdg(out)
    assert set(doc.shells["shell1"]) == {"a", "b"} and doc.shells["shell2"] == ()


def test_decompose_roundtrip_flag(capsys, bdg):
    code, out, _ = run(capsys, "decompose", bdg("F3"), "--format", "json")
    assert code == 0 and json.loads(out)["roundtrip"] is True


def test_compose_job(capsys, bdg, tmp_path):
    f6 = rooted("F6")
    outer = tmp_path / "outer.bdg"
    outer.write_text(emit_bdg(f6.graph.renamed({"r": "s", "a": "a6", "p": "p6"}), "s", f6.sign))
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"kind": "sharp", "parts": [str(outer), bdg("F1")], "assignment": {"h3": "a"}}))
    code, out, _ = run(capsys, "compose", str(job))
    assert code == 0
    assert len(parse_bdg(out).graph) == 4


def test_compose_hypothesis_violation_exits_2(capsys, bdg, tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"kind": "round", "parts": [bdg("F1"), bdg("F1")]}))
    code, _, err = run(capsys, "compose", str(job))
    assert code == 2 and "error" in err


def test_generate_respects_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("RADIAL_SEED", "11")
    _, a, _ = run(capsys, "generate", "--class", "triplex", "--vertices", "5")
    _, b, _ = run(capsys, "generate", "--class", "triplex", "--vertices", "5", "--seed", "11")
    assert a == b
    assert len(parse_bdg(a).graph) == 5


def test_verify_and_mutation(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "L-redge", "--trials", "10", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == 0
    code, _, _ = run(capsys, "verify", "--lemma", "L-nobypass", "--trials", "10", "--mutate")
    assert code == 1


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "L-grammar-complete" in out


def test_oracle_diff_small(capsys):
    code, out, _ = run(capsys, "oracle-diff", "--max-vertices", "2", "--max-edges", "2", "--trials", "20", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["mismatches"] == 0


def test_export_dot(capsys, bdg):
    code, out, _ = run(capsys, "export-dot", bdg("F2"))
    assert code == 0 and "doublecircle" in out and "arrowhead=otee" in out


def test_json_output_is_deterministic(capsys, bdg, tmp_path):
    path = bdg("F6")
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["decompose", path, "--format", "json", "-o", str(a)]) == 0
    assert main(["decompose", path, "--format", "json", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv", [["bogus"], ["classify", "/nonexistent.bdg"], ["ground", "x.bdg"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.bdg"
    bad.write_text("bdg 1\nvertex r\nedge e1 r ? r +\n")
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 2 and "3" in err
