import networkx as nx
import pytest

from bplab.drawing import compute_crossings, crossing_graph, validate_drawing
from bplab.errors import MalformedInput
from bplab.harness.generators import FAMILIES, corpus, generate, star_construction, star_parts

PARAMS = {
    "straightline-complete": {"n": 6},
    "star-construction": {"n": 3},
    "random-segments": {"n": 8, "m": 12, "seed": 1},
    "k6-figure1": {},
    "grid": {"a": 3, "b": 4},
    "random-planar-plus-chords": {"n": 9, "extra": 3, "seed": 2},
    "subdivided": {"base": {"family": "k6-figure1"}, "c": 2},
}


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_every_family_produces_a_valid_drawing(family):
    d = generate(family, PARAMS[family])
    assert validate_drawing(d) == []


def test_generation_is_deterministic():
    a = generate("random-segments", PARAMS["random-segments"])
    b = generate("random-segments", PARAMS["random-segments"])
    assert a.graph == b.graph and a.positions == b.positions and a.routes == b.routes


def test_unknown_family_and_missing_params():
    with pytest.raises(MalformedInput, match="unknown family"):
        generate("spirograph")
    with pytest.raises(MalformedInput, match="missing parameter"):
        generate("grid", {"a": 2})


@pytest.mark.parametrize("n", [3, 4])
def test_star_crossing_graph_is_complete_bipartite(n):
    a = compute_crossings(star_construction(n))
    s_edges, t_edges, _ = star_parts(n)
    assert all(m == 1 for m in a.crossings.values())
    cg = crossing_graph(a)
    g = nx.Graph(list(cg.edges))
    assert set(g.nodes) == set(s_edges) | set(t_edges)
    assert nx.is_isomorphic(g, nx.complete_bipartite_graph(n * n, n))


def test_corpus_is_valid_and_named_uniquely():
    items = corpus()
    names = [name for name, _ in items]
    assert len(names) == len(set(names)) == 34
    assert all(validate_drawing(d) == [] for _, d in items)
