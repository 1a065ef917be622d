from fractions import Fraction

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bplab.coloring import (acyclic_chromatic_exact, check_acn, is_acyclic_coloring, scol_exact, scol_greedy,
                            scol_of_order, sreach)
from bplab.errors import InstanceTooLarge
from bplab.expansion import topo_nabla
from bplab.graphcore import (Graph, VertexOrdering, complete_bipartite, complete_graph, cycle_graph, degeneracy,
                             empty_graph, path_graph)
from bplab.harness.bounds import scol_nabla_bound


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(tuple(range(n)), tuple(chosen))


def test_sreach_on_a_path():
    g = path_graph(4)
    order = VertexOrdering.from_sequence([0, 3, 1, 2])
    assert sreach(g, order, 3, 1) == {3}
    assert sreach(g, order, 3, 2) == {3}
    assert sreach(g, order, 1, 1) == {0, 1}
    assert sreach(g, order, 3, 3) == {0, 3}


@settings(max_examples=30, deadline=None)
@given(small_graphs(), st.integers(1, 3))
def test_scol_exact_matches_all_orders(g, r):
    s, order = scol_exact(g, r)
    assert s == oracles.scol_by_orders(g, r)
    assert scol_of_order(g, order, r) == s


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=8), st.integers(1, 3))
def test_greedy_is_an_upper_bound(g, r):
    assert scol_greedy(g, r)[0] >= scol_exact(g, r)[0]


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=8))
def test_scol1_is_degeneracy_plus_one(g):
    expected = degeneracy(g)[0] + 1 if g.n else 0
    assert scol_exact(g, 1)[0] == expected


@settings(max_examples=30, deadline=None)
@given(small_graphs())
def test_acyclic_chromatic_matches_enumeration(g):
    chi, coloring = acyclic_chromatic_exact(g)
    assert chi == oracles.acyclic_chromatic_by_colorings(g)
    assert is_acyclic_coloring(g, coloring) and len(set(coloring.values())) == chi


def test_acyclic_examples():
    assert acyclic_chromatic_exact(cycle_graph(4))[0] == 3
    assert acyclic_chromatic_exact(complete_graph(5))[0] == 5
    assert acyclic_chromatic_exact(path_graph(5))[0] == 2
    assert not is_acyclic_coloring(cycle_graph(4), {0: 0, 1: 1, 2: 0, 3: 1})


@pytest.mark.parametrize("g", [complete_graph(4), complete_bipartite(3, 3), cycle_graph(7), path_graph(6)])
def test_acn_chain(g):
    report = check_acn(g)
    assert report.holds and report.chi_a <= report.scol2


def test_caps():
    with pytest.raises(InstanceTooLarge):
        scol_exact(path_graph(10), 2)
    with pytest.raises(InstanceTooLarge):
        acyclic_chromatic_exact(path_graph(11))


@pytest.mark.parametrize("g", [path_graph(2), path_graph(3), empty_graph(2)])
def test_scol_nabla_bound_fails_on_tiny_forests(g):
    # With topo_nabla_0 < 1 the right-hand side (6r)^r * t^(3r) collapses
    # below scol_1 >= 1, so this inequality is only meaningful when t >= 1.
    t, _ = topo_nabla(g, 0)
    assert t < 1
    assert scol_exact(g, 1)[0] > scol_nabla_bound(1, t).value


@pytest.mark.parametrize("g", [cycle_graph(5), complete_graph(4), complete_bipartite(2, 3)])
def test_scol_nabla_bound_holds_once_density_reaches_one(g):
    for r in (1, 2):
        t, _ = topo_nabla(g, r - 1)
        assert t >= 1
        assert scol_exact(g, r)[0] <= scol_nabla_bound(r, t).value


def test_scol_nabla_k2_value():
    assert scol_nabla_bound(1, Fraction(1, 2)).value == Fraction(6, 8)
