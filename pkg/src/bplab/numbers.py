"""Gap, cover, matching-planar and gap-cover numbers of a fixed drawing."""

from __future__ import annotations

import math
from functools import lru_cache

import networkx as nx
import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix

from .certificates import Bearing, CoverCertificate, GapCertificate, GapCoverCertificate
from .drawing import AbstractDrawing, crossing_graph, independent_pairs
from .graphcore import Graph, MaxFlow, degeneracy, max_subgraph_density

GAP_COVER_SEARCH_CAP = 12
GAP_COVER_EXACT_CAP = 2000


# ---------------------------------------------------------------------------
# gap number
# ---------------------------------------------------------------------------


def crossing_multigraph_density(a: AbstractDrawing):
    return max_subgraph_density(crossing_graph(a), a.crossings)


def _orient(a: AbstractDrawing, k: int) -> dict | None:
    """Charge every occurrence to one of its edges, at most k per edge."""
    occ = a.occurrences
    edges = list(a.graph.edges)
    eidx = {e: i for i, e in enumerate(edges)}
    s = 0
    t = 1
    first_occ = 2
    first_edge = first_occ + len(occ)
    net = MaxFlow(first_edge + len(edges))
    arcs = []
    for j, (e, f, _) in enumerate(occ):
        net.add_edge(s, first_occ + j, 1)
        arcs.append((net.add_edge(first_occ + j, first_edge + eidx[e], 1),
                     net.add_edge(first_occ + j, first_edge + eidx[f], 1)))
    for i in range(len(edges)):
        net.add_edge(first_edge + i, t, k)
    if net.max_flow(s, t) != len(occ):
        return None
    charge = {}
    for (e, f, i), (to_e, _) in zip(occ, arcs):
        charge[(e, f, i)] = e if net.flow_on(to_e) else f
    return charge


def gap_number(a: AbstractDrawing) -> tuple[int, GapCertificate]:
    """Least k such that crossings can be charged with at most k per edge.

    Equal to the ceiling of the maximum subgraph density of the crossing
    multigraph (Hakimi); the charging itself comes from a flow.
    """
    if not a.crossings:
        return 0, GapCertificate({}, 0)
    rho, _ = crossing_multigraph_density(a)
    k = math.ceil(rho)
    charge = _orient(a, k)
    assert charge is not None, "orientation must exist at ceil(density)"
    return k, GapCertificate(charge, k)


# ---------------------------------------------------------------------------
# vertex cover / matching primitives
# ---------------------------------------------------------------------------


def min_vertex_cover(edges) -> tuple:
    """Exact minimum vertex cover of a small edge set (branch and bound)."""
    return _mvc(frozenset(tuple(e) for e in edges))


@lru_cache(maxsize=200_000)
def _mvc(edges: frozenset) -> tuple:
    if not edges:
        return ()
    deg: dict = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    # a pendant edge can always be covered by its non-pendant end
    for u, v in sorted(edges):
        if deg[u] == 1 or deg[v] == 1:
            x = v if deg[u] == 1 else u
            if deg[u] == 1 and deg[v] == 1:
                x = min(u, v)
            rest = frozenset(e for e in edges if x not in e)
            return tuple(sorted((x,) + _mvc(rest)))
    v = min(deg, key=lambda x: (-deg[x], x))
    with_v = (v,) + _mvc(frozenset(e for e in edges if v not in e))
    nbrs = sorted({u for e in edges if v in e for u in e if u != v})
    if len(nbrs) < len(with_v):
        drop = set(nbrs)
        without_v = tuple(nbrs) + _mvc(frozenset(e for e in edges if not (set(e) & drop)))
        if len(without_v) < len(with_v):
            return tuple(sorted(without_v))
    return tuple(sorted(with_v))


def max_matching_size(edges) -> int:
    g = nx.Graph()
    g.add_edges_from(edges)
    return len(nx.max_weight_matching(g, maxcardinality=True))


def _crossers(a: AbstractDrawing) -> dict:
    out = {e: [] for e in a.graph.edges}
    for e, f in independent_pairs(a):
        out[e].append(f)
        out[f].append(e)
    return out


# ---------------------------------------------------------------------------
# cover and matching-planar numbers
# ---------------------------------------------------------------------------


def cover_number(a: AbstractDrawing) -> tuple[int, CoverCertificate]:
    crossers = _crossers(a)
    covers = {e: frozenset(min_vertex_cover(fs)) for e, fs in crossers.items()}
    k = max((len(c) for c in covers.values()), default=0)
    return k, CoverCertificate(covers, k)


def matching_planar_number(a: AbstractDrawing) -> int:
    return max((max_matching_size(fs) for fs in _crossers(a).values() if fs), default=0)


def crossing_graph_degeneracy(a: AbstractDrawing) -> int:
    """Degeneracy of the crossing multigraph (parallel edges counted)."""
    return degeneracy(crossing_graph(a), a.crossings)[0]


# ---------------------------------------------------------------------------
# gap-cover number
# ---------------------------------------------------------------------------


def _certificate_from(resp: dict, edges, k: int | None = None,
                      optimal: bool = True) -> GapCoverCertificate:
    pairs = set()
    covers = {}
    for e in edges:
        fs = resp.get(e, ())
        for f in fs:
            pairs.add((e, f))
        covers[e] = frozenset(min_vertex_cover(fs))
    if k is None:
        k = max((len(c) for c in covers.values()), default=0)
    return GapCoverCertificate(Bearing(frozenset(pairs)), covers, k, optimal)


def gap_to_gap_cover(a: AbstractDrawing, cert: GapCertificate) -> GapCoverCertificate:
    """Each independent occurrence charged to e makes e responsible for its partner."""
    resp: dict = {}
    for (e, f, _), paid in sorted(cert.charge.items()):
        if set(e) & set(f):
            continue
        other = f if paid == e else e
        resp.setdefault(paid, set()).add(other)
    return _certificate_from({e: sorted(fs) for e, fs in resp.items()}, a.graph.edges)


def cover_to_gap_cover(a: AbstractDrawing, cert: CoverCertificate) -> GapCoverCertificate:
    pairs = set()
    for e, f in independent_pairs(a):
        pairs |= {(e, f), (f, e)}
    covers = {e: frozenset(cert.covers.get(e, ())) for e in a.graph.edges}
    k = max((len(c) for c in covers.values()), default=0)
    return GapCoverCertificate(Bearing(frozenset(pairs)), covers, k)


def _cost(fs) -> int:
    return len(min_vertex_cover(fs))


def _heuristic_bearing(a: AbstractDrawing) -> dict:
    """Give each pair to the edge whose full crosser set is cheaper to cover,
    then relieve the bottleneck edge while that strictly helps."""
    crossers = _crossers(a)
    full = {e: _cost(fs) for e, fs in crossers.items()}
    resp = {e: set() for e in a.graph.edges}
    for e, f in independent_pairs(a):
        owner, other = (e, f) if (full[e], e) <= (full[f], f) else (f, e)
        resp[owner].add(other)
    for _ in range(4 * len(resp) + 1):
        value = {e: _cost(fs) for e, fs in resp.items()}
        top = max(value.values(), default=0)
        if top == 0:
            break
        e = min(x for x in value if value[x] == top)
        moved = []
        for f in sorted(resp[e]):
            if _cost(resp[f] | {e}) < top:
                resp[e].discard(f)
                resp[f].add(e)
                moved.append(f)
        if _cost(resp[e]) < top:
            continue
        for f in moved:
            resp[f].discard(e)
            resp[e].add(f)
        break
    return {e: sorted(fs) for e, fs in resp.items()}


def gap_cover_number(a: AbstractDrawing, budget: int | None = None,
                     cap: int = GAP_COVER_EXACT_CAP) -> tuple[int, GapCoverCertificate]:
    """Least k such that some bearing admits B-covers of size at most k.

    Up to ``GAP_COVER_SEARCH_CAP`` independent pairs a branch and bound
    decides; larger instances go to an integer program. ``budget``
    optionally stops the search at the first bearing of cost at most
    ``budget``. Beyond ``cap`` independent pairs only the upper bound from
    certificates and the heuristic is returned; it is flagged optimal when
    it meets the trivial lower bound.
    """
    pairs = independent_pairs(a)
    edges = a.graph.edges
    if not pairs:
        return 0, _certificate_from({}, edges)
    lower = 1

    candidates = []
    _, gcert = gap_number(a)
    candidates.append(gap_to_gap_cover(a, gcert))
    _, ccert = cover_number(a)
    candidates.append(cover_to_gap_cover(a, ccert))
    candidates.append(_certificate_from(_heuristic_bearing(a), edges))
    best = min(candidates, key=lambda c: c.k)
    stop_at = lower if budget is None else max(lower, budget)
    if best.k <= stop_at:
        return best.k, GapCoverCertificate(best.bearing, best.covers, best.k, best.k == lower)
    if len(pairs) > cap:
        return best.k, GapCoverCertificate(best.bearing, best.covers, best.k, False)

    if len(pairs) <= GAP_COVER_SEARCH_CAP:
        found = _search_bearing(pairs, edges, best.k, stop_at)
    else:
        found = _milp_bearing(a, pairs, best.k)
        if found is None:
            return best.k, GapCoverCertificate(best.bearing, best.covers, best.k, False)
    if found is None:
        return best.k, best
    k, resp = found
    cert = _certificate_from(resp, edges, k)
    return k, cert


def _search_bearing(pairs: list, edges, upper: int, stop_at: int):
    """Branch and bound over pairs; each pair gets exactly one owner.

    Adding a second direction only grows a responsibility set, so
    exactly-one assignments are enough. Returns (k, resp) for the best
    assignment strictly below ``upper``, or None if there is none.
    """
    best_k = upper
    best_resp = None
    resp = {e: frozenset() for e in edges}

    def search(i: int, current: int) -> bool:
        nonlocal best_k, best_resp
        if i == len(pairs):
            best_k, best_resp = current, dict(resp)
            return best_k <= stop_at
        e, f = pairs[i]
        options = []
        for owner, other in ((e, f), (f, e)):
            grown = resp[owner] | {other}
            options.append((max(current, _cost(grown)), owner, grown))
        options.sort(key=lambda o: (o[0], o[1]))
        for bound, owner, grown in options:
            if bound >= best_k:
                continue
            old = resp[owner]
            resp[owner] = grown
            done = search(i + 1, bound)
            resp[owner] = old
            if done:
                return True
        return False

    search(0, 0)
    if best_resp is None:
        return None
    return best_k, {e: sorted(fs) for e, fs in best_resp.items()}


def _milp_bearing(a: AbstractDrawing, pairs: list, upper: int):
    """Integer program: k, x[e,v] (v in the cover of e), y[e,f] (e owns {e,f}).

    minimize k subject to sum_v x[e,v] <= k, y[e,f] <= x[e,a] + x[e,b] for
    f = ab, and y[e,f] + y[f,e] >= 1. Solved with HiGHS; the returned
    assignment is re-checked combinatorially by the caller's certificate.
    Returns None unless the solver proves optimality.
    """
    crossers = _crossers(a)
    col = {"k": 0}
    for e, fs in crossers.items():
        for v in sorted({x for f in fs for x in f}):
            col[("x", e, v)] = len(col)
    for e, f in pairs:
        col[("y", e, f)] = len(col)
        col[("y", f, e)] = len(col)
    rows, cols, vals, lo, hi = [], [], [], [], []

    def row(entries, lower, upper_):
        r = len(lo)
        for c, v in entries:
            rows.append(r)
            cols.append(c)
            vals.append(v)
        lo.append(lower)
        hi.append(upper_)

    for e, fs in crossers.items():
        xs = [col[key] for key in col if key[0] == "x" and key[1] == e]
        if xs:
            row([(c, 1) for c in xs] + [(0, -1)], -np.inf, 0)
    for e, f in pairs:
        for own, oth in ((e, f), (f, e)):
            row([(col[("y", own, oth)], 1), (col[("x", own, oth[0])], -1),
                 (col[("x", own, oth[1])], -1)], -np.inf, 0)
        row([(col[("y", e, f)], 1), (col[("y", f, e)], 1)], 1, np.inf)
    n = len(col)
    matrix = coo_matrix((vals, (rows, cols)), shape=(len(lo), n))
    cost = np.zeros(n)
    cost[0] = 1
    lower = np.zeros(n)
    upper_b = np.ones(n)
    lower[0], upper_b[0] = 1, upper
    res = milp(cost, constraints=LinearConstraint(matrix, lo, hi), integrality=np.ones(n),
               bounds=Bounds(lower, upper_b))
    if res.status != 0 or res.x is None:
        return None
    z = np.round(res.x).astype(int)
    resp: dict = {e: [] for e in a.graph.edges}
    for e, f in pairs:
        if z[col[("y", e, f)]]:
            resp[e].append(f)
        else:
            resp[f].append(e)
    k = max((_cost(fs) for fs in resp.values()), default=0)
    if k != int(z[0]):
        return None
    return k, {e: sorted(fs) for e, fs in resp.items()}
