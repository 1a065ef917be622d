import pytest

from bplab.drawing import AbstractDrawing, compute_crossings
from bplab.errors import InstanceTooLarge
from bplab.graphcore import path_graph
from bplab.harness.generators import k6_figure1, star_construction
from bplab.harness.bounds import exact
from bplab.harness.report import BoundConfig, strict_check, verify_bounds


def test_k6_report_holds_and_lists_every_family():
    rep = verify_bounds(compute_crossings(k6_figure1()), BoundConfig(), "k6")
    assert rep.holds and not rep.failures()
    names = {e["bound"] for e in rep.entries}
    assert {"extremal", "degeneracy", "treewidth", "linear_expansion", "acn", "scol_nabla"} <= names
    assert rep.measured["k_gap"] == 1
    assert {x["result"] for x in rep.to_json()["not_checkable"]} == {"ER", "kGapPlanarNabla"}


def test_forest_skips_scol_nabla():
    rep = verify_bounds(AbstractDrawing(path_graph(3), {}), BoundConfig(radii=(0, 1)), "p3")
    assert rep.holds
    assert any(s["quantity"] == "scol_nabla_r1" and "forest" in s["reason"] for s in rep.skipped)


def test_caps_are_skips_unless_strict():
    a = compute_crossings(star_construction(3))
    rep = verify_bounds(a, BoundConfig(radii=(0,)), "star")
    assert rep.holds and any("cap" in s["reason"] for s in rep.skipped)
    with pytest.raises(InstanceTooLarge):
        strict_check(rep)


def test_failed_entry_is_reported():
    rep = verify_bounds(compute_crossings(k6_figure1()), BoundConfig(radii=(0,)), "k6")
    rep.add("extremal", 100, exact(8))
    assert not rep.holds and rep.failures() == ["extremal: 100 > 8"]
