import json

import pytest

from bplab import jsonio
from bplab.cli import main
from bplab.drawing import compute_crossings
from bplab.errors import MalformedInput
from bplab.harness.generators import k6_figure1
from bplab.harness.pipeline import parse_spec, run_pipeline, seed_for, summarize
from bplab.numbers import gap_number

SPEC = {"schema": "bpl/1", "kind": "pipeline-spec"}


def test_empty_spec_gives_empty_bundle(tmp_path):
    bundle = run_pipeline(dict(SPEC))
    assert bundle["instances"] == [] and bundle["ok"]
    path = tmp_path / "empty.json"
    jsonio.save(SPEC, path)
    assert main(["pipeline", "--spec", str(path), "-o", str(tmp_path / "out.json")]) == 0


def test_seeds_expand_into_separate_instances():
    spec = {**SPEC, "instances": [{"id": "seg", "family": "random-segments",
                                   "params": {"n": 6, "m": 8}, "seeds": [4, 2]}]}
    _, instances, _ = parse_spec(spec)
    assert [i["id"] for i in instances] == ["seg-s4", "seg-s2"]
    assert instances[1]["params"] == {"n": 6, "m": 8, "seed": 2}


@pytest.mark.parametrize("bad, where", [
    ({"instances": [{"id": "x"}]}, "instances[0]: missing 'family'"),
    ({"instances": [{"family": "grid", "checks": ["magic"]}]}, "instances[0]: unknown checks"),
    ({"instances": [{"family": "k6-figure1"}, {"family": "k6-figure1"}]}, "duplicate instance ids"),
    ({"certificates": [{"instance": "nope", "certificate": {}}]}, "certificates[0]"),
])
def test_spec_errors_are_located(bad, where):
    with pytest.raises(MalformedInput, match=where.replace("[", r"\[").replace("]", r"\]")):
        parse_spec({**SPEC, **bad}, "my.json")


def test_spec_without_schema_rejected():
    with pytest.raises(MalformedInput, match="schema"):
        parse_spec({"instances": []})


def test_small_pipeline_passes_and_summarizes():
    spec = {**SPEC, "config": {"radii": [0, 1], "sparsify_seeds": 3, "contract_c": [1]},
            "instances": [{"id": "k6", "family": "k6-figure1"},
                          {"id": "g", "family": "grid", "params": {"a": 2, "b": 3}, "checks": ["bounds"]}]}
    bundle = run_pipeline(spec)
    assert bundle["ok"], bundle["summary"]["failures"]
    assert [r["id"] for r in bundle["instances"]] == ["g", "k6"]
    assert set(bundle["instances"][1]["constructions"]) == {"minor-drawing", "contract", "sparsify",
                                                            "planarize-lift"}
    assert "all checks passed" in summarize(bundle)
    assert jsonio.dumps(bundle) == jsonio.dumps(run_pipeline(spec))


def _k6_gap_certificate():
    _, cert = gap_number(compute_crossings(k6_figure1()))
    return jsonio.certificate_to_json(cert)


def test_valid_fixture_is_accepted():
    spec = {**SPEC, "instances": [{"id": "k6", "family": "k6-figure1", "checks": []}],
            "certificates": [{"instance": "k6", "certificate": _k6_gap_certificate()}]}
    bundle = run_pipeline(spec)
    assert bundle["ok"] and bundle["certificate_checks"][0]["verifier"] == "verify_gap"


def test_corrupted_fixture_fails_naming_the_verifier(tmp_path, capsys):
    cert = _k6_gap_certificate()
    cert["k"] = 0
    spec = {**SPEC, "instances": [{"id": "k6", "family": "k6-figure1", "checks": []}],
            "certificates": [{"instance": "k6", "certificate": cert}]}
    path = tmp_path / "spec.json"
    jsonio.save(spec, path)
    code = main(["pipeline", "--spec", str(path), "--format", "text"])
    out, err = capsys.readouterr()
    assert code != 0
    assert "verify_gap" in err and "REJECTED" in out


def test_unparsable_fixture_is_reported_not_raised():
    spec = {**SPEC, "instances": [{"id": "k6", "family": "k6-figure1", "checks": []}],
            "certificates": [{"instance": "k6", "certificate": {"schema": "bpl/1", "kind": "gap-certificate"}}]}
    bundle = run_pipeline(spec)
    row = bundle["certificate_checks"][0]
    assert not bundle["ok"] and not row["verified"] and "error" in row


def test_seed_derivation_is_stable():
    assert seed_for("k6", "model1") == seed_for("k6", "model1")
    assert seed_for("k6", "model1") != seed_for("k6", "model2")


def test_bad_spec_file_exits_two(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({**SPEC, "instances": [{"id": "x"}]}))
    assert main(["pipeline", "--spec", str(path)]) == 2
    assert "instances[0]" in capsys.readouterr().err
