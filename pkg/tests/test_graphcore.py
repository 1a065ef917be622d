from fractions import Fraction

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bplab.errors import InstanceTooLarge, MalformedInput
from bplab.graphcore import (Graph, MaxFlow, TreeDecomposition, VertexOrdering, complete_bipartite,
                             complete_graph, cycle_graph, decomposition_from_order, degeneracy, density,
                             empty_graph, later_neighbor_counts, max_subgraph_density,
                             max_subgraph_density_bruteforce, path_graph, treewidth_exact,
                             validate_tree_decomposition)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(tuple(range(n)), tuple(chosen))


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


def test_graph_rejects_self_loop():
    with pytest.raises(MalformedInput):
        Graph((0, 1), ((1, 1),))


def test_graph_rejects_duplicate_edge():
    with pytest.raises(MalformedInput):
        Graph((0, 1), ((0, 1), (1, 0)))


def test_graph_rejects_undeclared_endpoint():
    with pytest.raises(MalformedInput):
        Graph((0, 1), ((0, 2),))


def test_graph_normalizes_edges():
    g = Graph((2, 0, 1), ((2, 1), (0, 1)))
    assert g.vertices == (0, 1, 2)
    assert g.edges == ((0, 1), (1, 2))
    assert g.has_edge(2, 1) and g.degree(1) == 2


# ---------------------------------------------------------------------------
# density and degeneracy
# ---------------------------------------------------------------------------


def test_density_examples():
    assert density(empty_graph(0)) == 0
    assert density(complete_graph(4)) == Fraction(3, 2)
    assert density(cycle_graph(5)) == 1


def test_degeneracy_examples():
    assert degeneracy(path_graph(6))[0] == 1
    assert degeneracy(complete_graph(5))[0] == 4
    assert degeneracy(cycle_graph(4))[0] == 2


def test_max_density_examples():
    rho, witness = max_subgraph_density(empty_graph(3))
    assert rho == 0 and len(witness) == 1
    rho, witness = max_subgraph_density(complete_bipartite(3, 3))
    assert rho == Fraction(3, 2) and len(witness) == 6
    assert max_subgraph_density(path_graph(3))[0] == Fraction(2, 3)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_max_density_matches_subset_enumeration(g):
    rho, witness = max_subgraph_density(g)
    expected = oracles.max_density_by_subsets(g.vertices, {e: 1 for e in g.edges})
    assert rho == expected
    if g.n:
        assert density(g.subgraph(witness)) == rho
    assert density(g) <= rho


def test_weighted_density_matches_bruteforce():
    g = cycle_graph(4)
    mult = {(0, 1): 3, (1, 2): 1, (2, 3): 1, (0, 3): 1}
    assert max_subgraph_density(g, mult)[0] == max_subgraph_density_bruteforce(g, mult) == Fraction(3, 2)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_degeneracy_and_witness_order(g):
    d, order = degeneracy(g)
    assert d == oracles.degeneracy_by_subsets(g)
    assert max(later_neighbor_counts(g, order).values(), default=0) <= d


def test_vertex_ordering_round_trip():
    order = VertexOrdering.from_sequence([3, 1, 2])
    assert order.sequence == [3, 1, 2]
    assert order.precedes(3, 2) and not order.precedes(2, 1)
    assert order.reversed().sequence == [2, 1, 3]


def test_maxflow_small_network():
    f = MaxFlow(4)
    a = f.add_edge(0, 1, 3)
    f.add_edge(0, 2, 2)
    f.add_edge(1, 3, 2)
    f.add_edge(2, 3, 3)
    f.add_edge(1, 2, 1)
    assert f.max_flow(0, 3) == 5
    assert f.flow_on(a) == 3


# ---------------------------------------------------------------------------
# tree decompositions
# ---------------------------------------------------------------------------


def _path_td(bags):
    tree = path_graph(len(bags))
    return TreeDecomposition(tree, {i: frozenset(b) for i, b in enumerate(bags)})


def test_single_bag_is_valid():
    g = complete_graph(4)
    td = _path_td([range(4)])
    assert validate_tree_decomposition(g, td) == []
    assert td.width == 3


def test_missing_edge_is_named():
    g = path_graph(4)
    td = _path_td([{0, 1}, {1, 2}, {3}])
    bad = validate_tree_decomposition(g, td)
    assert any(v.startswith("edge:") and "2" in v and "3" in v for v in bad)


def test_path_decomposition_of_p4():
    g = Graph((1, 2, 3, 4), ((1, 2), (2, 3), (3, 4)))
    td = _path_td([{1, 2}, {2, 3}, {3, 4}])
    assert validate_tree_decomposition(g, td) == [] and td.width == 1


def test_disconnected_trace_is_reported():
    g = path_graph(3)
    td = _path_td([{0, 1}, {1, 2}, {0}])
    assert any(v.startswith("subtree:") for v in validate_tree_decomposition(g, td))


def test_uncovered_vertex_is_reported():
    g = empty_graph(2)
    td = _path_td([{0}])
    assert any(v.startswith("vertex:") for v in validate_tree_decomposition(g, td))


def test_treewidth_examples():
    assert treewidth_exact(path_graph(5))[0] == 1
    assert treewidth_exact(complete_graph(4))[0] == 3
    assert treewidth_exact(cycle_graph(5))[0] == 2


def test_treewidth_cap():
    with pytest.raises(InstanceTooLarge):
        treewidth_exact(path_graph(15))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_treewidth_matches_elimination_orders(g):
    w, td = treewidth_exact(g)
    assert w == oracles.treewidth_by_orders(g)
    if g.n:
        assert validate_tree_decomposition(g, td) == [] and td.width == w


def test_decomposition_from_any_order_is_valid():
    g = complete_bipartite(2, 3)
    td = decomposition_from_order(g, list(reversed(g.vertices)))
    assert validate_tree_decomposition(g, td) == []
