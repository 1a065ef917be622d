import json

import pytest

from bplab import jsonio
from bplab.cli import main
from bplab.harness.generators import k6_figure1, star_construction


@pytest.fixture
def k6_file(tmp_path):
    path = tmp_path / "k6.json"
    jsonio.save(jsonio.drawing_to_json(k6_figure1()), path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_good_and_bad(tmp_path, capsys, k6_file):
    code, out, _ = run(capsys, "validate", "-i", k6_file)
    assert code == 0 and json.loads(out)["valid"]
    doc = jsonio.drawing_to_json(k6_figure1())
    first, second = sorted(doc["positions"])[:2]
    doc["positions"][second] = doc["positions"][first]
    bad = tmp_path / "bad.json"
    jsonio.save(doc, bad)
    code, out, _ = run(capsys, "validate", "-i", bad, "--format", "text")
    assert code == 2 and "distinct points" in out


def test_numbers_and_certificate_verification(tmp_path, capsys, k6_file):
    for cmd in ("gap", "cover", "gap-cover"):
        out_path = tmp_path / f"{cmd}.json"
        code, _, _ = run(capsys, cmd, "-i", k6_file, "-o", out_path)
        assert code == 0
        doc = jsonio.load(out_path)
        assert doc["k"] == 1
        cert_path = tmp_path / f"{cmd}-cert.json"
        jsonio.save(doc["certificate"], cert_path)
        code, out, _ = run(capsys, cmd, "-i", k6_file, "--certificate", cert_path)
        assert code == 0 and json.loads(out)["verified"]


def test_corrupted_certificate_exits_one(tmp_path, capsys, k6_file):
    code, out, _ = run(capsys, "gap", "-i", k6_file)
    cert = json.loads(out)["certificate"]
    cert["charges"] = cert["charges"][1:]
    path = tmp_path / "cert.json"
    jsonio.save(cert, path)
    code, out, err = run(capsys, "gap", "-i", k6_file, "--certificate", path)
    assert code == 1 and "verify_gap" in err
    assert json.loads(out)["verified"] is False


def test_malformed_json_exits_two_with_location(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"schema": "bpl/1",\n "kind": }')
    code, _, err = run(capsys, "gap", "-i", path)
    assert code == 2 and "broken.json:2:" in err


def test_cap_exceeded_exits_three(tmp_path, capsys):
    path = tmp_path / "g.json"
    jsonio.save(jsonio.graph_to_json(star_construction(3).graph), path)
    code, _, err = run(capsys, "coloring", "--graph", path, "--r", "2")
    assert code == 3 and "cap" in err
    code, _, _ = run(capsys, "expansion", "--graph", path, "--r", "1")
    assert code == 3


def test_expansion_and_coloring(tmp_path, capsys):
    from bplab.graphcore import complete_bipartite
    path = tmp_path / "k33.json"
    jsonio.save(jsonio.graph_to_json(complete_bipartite(3, 3)), path)
    code, out, _ = run(capsys, "expansion", "--graph", path, "--r", "1")
    assert code == 0 and json.loads(out)["value"] == [8, 5]
    code, out, _ = run(capsys, "coloring", "--graph", path, "--mode", "acn")
    doc = json.loads(out)
    assert code == 0 and doc["holds"] and doc["chi_a"] <= doc["scol2"]


def test_planarize_then_lift(tmp_path, capsys, k6_file):
    p = tmp_path / "p.json"
    assert run(capsys, "planarize", "-i", k6_file, "-o", p)[0] == 0
    code, out, _ = run(capsys, "lift-td", "-i", p)
    assert code == 0 and json.loads(out)["kind"] == "tree-decomposition"


def test_sparsify_cli_is_seeded(capsys, k6_file):
    first = run(capsys, "sparsify", "-i", k6_file, "--seed", "9")[1]
    second = run(capsys, "sparsify", "-i", k6_file, "--seed", "9")[1]
    assert first == second and json.loads(first)["trace"]["prng"] == "numpy.random.PCG64/1"


def test_bounds_calculator_and_measured(capsys, k6_file):
    code, out, _ = run(capsys, "bounds", "--k", "2", "--r", "1", "--n", "10")
    doc = json.loads(out)
    assert code == 0 and doc["d_k"] == [81, 4]
    assert doc["bounds"]["extremal"]["rounding"] == "up"
    code, out, _ = run(capsys, "bounds", "-i", k6_file, "--format", "text")
    assert code == 0 and "VIOLATED" not in out


def test_generate_and_crossings(tmp_path, capsys):
    path = tmp_path / "c5.json"
    code, _, _ = run(capsys, "generate", "--family", "straightline-complete", "-p", "n=5", "-o", path)
    assert code == 0
    code, out, _ = run(capsys, "crossings", "-i", path)
    assert code == 0 and sum(m for _, _, m in json.loads(out)["crossings"]) == 5


def test_bad_param_exits_two(capsys):
    assert run(capsys, "generate", "--family", "grid", "-p", "a")[0] == 2
