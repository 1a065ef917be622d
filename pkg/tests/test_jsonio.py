import json
from fractions import Fraction

import pytest
from conftest import random_abstract

from bplab import jsonio
from bplab.constructions import SubdivisionWitness, planarize
from bplab.drawing import compute_crossings
from bplab.errors import MalformedInput
from bplab.expansion import nabla
from bplab.graphcore import complete_bipartite, treewidth_exact
from bplab.harness.generators import k6_figure1, random_segments, subdivided
from bplab.numbers import cover_number, gap_cover_number, gap_number


def roundtrip(doc):
    return json.loads(jsonio.dumps(doc))


def test_scalars():
    assert jsonio.edge_str((5, 2)) == "2-5"
    assert jsonio.parse_edge("7-3") == (3, 7) == jsonio.parse_edge([7, 3])
    assert jsonio.rat(Fraction(6, 4)) == [3, 2]
    assert jsonio.parse_rat([3, 2]) == Fraction(3, 2) == jsonio.parse_rat("3/2")


@pytest.mark.parametrize("bad", ["1", "a-b", "1-2-3", [1]])
def test_bad_edges(bad):
    with pytest.raises(MalformedInput):
        jsonio.parse_edge(bad)


@pytest.mark.parametrize("bad", [0.5, [1, 0], [1], None])
def test_bad_rationals(bad):
    with pytest.raises(MalformedInput):
        jsonio.parse_rat(bad)


def test_graph_roundtrip():
    g = complete_bipartite(2, 3)
    assert jsonio.graph_from_json(roundtrip(jsonio.graph_to_json(g))) == g


def test_geometric_drawing_roundtrip():
    for d in (k6_figure1(), random_segments(7, 10, 3)):
        back = jsonio.drawing_from_json(roundtrip(jsonio.drawing_to_json(d)))
        assert back.graph == d.graph
        assert compute_crossings(back).crossings == compute_crossings(d).crossings


def test_abstract_drawing_roundtrip():
    a = random_abstract(7, 10, 11)
    back = jsonio.abstract_from_json(roundtrip(jsonio.abstract_to_json(a)))
    assert back.graph == a.graph and back.crossings == a.crossings and back.order == a.order


def test_certificate_roundtrips():
    a = random_abstract(8, 12, 4)
    for solver in (gap_number, cover_number, gap_cover_number):
        _, cert = solver(a)
        assert jsonio.certificate_from_json(roundtrip(jsonio.certificate_to_json(cert))) == cert


def test_witness_roundtrips():
    d = k6_figure1()
    p = planarize(d)
    _, td = treewidth_exact(p.planar_graph)
    assert jsonio.td_from_json(roundtrip(jsonio.td_to_json(td))) == td
    back = jsonio.planarization_from_json(roundtrip(jsonio.planarization_to_json(p)))
    assert back.planar_graph == p.planar_graph and back.dummy_of == p.dummy_of
    _, model = nabla(complete_bipartite(2, 3), 1)
    mback = jsonio.model_from_json(roundtrip(jsonio.model_to_json(model)))
    assert mback.pattern == model.pattern and dict(mback.center) == dict(model.center)
    _, paths = subdivided(d, 1)
    w = SubdivisionWitness(d.graph, paths, 1)
    wback = jsonio.subdivision_from_json(roundtrip(jsonio.subdivision_to_json(w)))
    assert wback.pattern == w.pattern and wback.c == 1
    assert {e: tuple(p) for e, p in wback.paths.items()} == {e: tuple(p) for e, p in paths.items()}


def test_wrong_schema_or_kind():
    doc = jsonio.graph_to_json(complete_bipartite(1, 1))
    with pytest.raises(MalformedInput, match="schema"):
        jsonio.graph_from_json({**doc, "schema": "bpl/0"})
    with pytest.raises(MalformedInput, match="expected a .drawing. document"):
        jsonio.drawing_from_json(doc)
    with pytest.raises(MalformedInput):
        jsonio.certificate_from_json({**doc, "kind": "mystery-certificate"})
    with pytest.raises(MalformedInput):
        jsonio.graph_from_json({"schema": "bpl/1", "kind": "graph", "vertices": [0]})


def test_load_reports_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "schema": "bpl/1",\n  "kind": graph\n}\n')
    with pytest.raises(MalformedInput, match=r"broken\.json:3:11"):
        jsonio.load(path)
    with pytest.raises(MalformedInput):
        jsonio.load(tmp_path / "missing.json")


def test_dumps_is_canonical():
    text = jsonio.dumps({"b": 1, "a": [1, 2]})
    assert text.endswith("\n") and text.index('"a"') < text.index('"b"')
