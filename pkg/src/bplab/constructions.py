"""Certified transformations: shallow-minor drawings, subdivision contraction,
random sparsification, and planarization with tree-decomposition lifting."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .certificates import Bearing, GapCertificate, GapCoverCertificate
from .drawing import AbstractDrawing, GeometricDrawing, crossing_points, independent, pair_key
from .errors import MalformedInput
from .graphcore import Graph, TreeDecomposition, edge_key, validate_tree_decomposition
from .verify import verify_gap, verify_gap_cover

PRNG_NAME = "numpy.random.PCG64/1"


# ---------------------------------------------------------------------------
# shallow models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShallowModel:
    """An r-shallow model of ``pattern`` in ``host``.

    ``edge_witness[(h1, h2)]`` is a host edge with one end in each of the
    two branch sets.
    """

    host: Graph
    pattern: Graph
    branch: Mapping
    center: Mapping
    r: int
    edge_witness: Mapping


def validate_model(m: ShallowModel) -> list[str]:
    out = []
    host = m.host
    seen: dict = {}
    for h in m.pattern.vertices:
        bs = set(m.branch.get(h, ()))
        if not bs:
            out.append(f"nonempty: branch set of {h} is empty")
            continue
        if not bs <= set(host.vertices):
            out.append(f"host: branch set of {h} has vertices outside the host")
            continue
        for x in sorted(bs):
            if x in seen:
                out.append(f"disjointness: vertex {x} lies in branch sets of {seen[x]} and {h}")
            seen[x] = h
        if not host.is_connected_set(bs):
            out.append(f"connectivity: branch set of {h} is not connected")
            continue
        c = m.center.get(h)
        if c not in bs:
            out.append(f"center: center of {h} is not in its branch set")
            continue
        ecc = max(host.bfs_distances(c, within=bs).values())
        if ecc > m.r:
            out.append(f"radius: branch set of {h} has eccentricity {ecc} > r={m.r} from its center")
    for he in m.pattern.edges:
        w = m.edge_witness.get(he)
        if w is None:
            out.append(f"edge witness: pattern edge {he} has none")
            continue
        x, y = w
        if not host.has_edge(x, y):
            out.append(f"edge witness: {w} is not a host edge")
            continue
        a, b = set(m.branch.get(he[0], ())), set(m.branch.get(he[1], ()))
        if not ((x in a and y in b) or (x in b and y in a)):
            out.append(f"edge witness: {w} does not join the branch sets of {he}")
    return out


def _bfs_path(g: Graph, source, target, within) -> list:
    allowed = set(within)
    parent = {source: None}
    frontier = [source]
    while frontier and target not in parent:
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if y in allowed and y not in parent:
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def corridor_walks(m: ShallowModel) -> dict:
    """Walk (v0, ..., va, wb, ..., w0) in the host for every pattern edge vw."""
    walks = {}
    for v, w in m.pattern.edges:
        x, y = m.edge_witness[(v, w)]
        if x not in m.branch[v]:
            x, y = y, x
        left = _bfs_path(m.host, m.center[v], x, m.branch[v])
        right = _bfs_path(m.host, m.center[w], y, m.branch[w])
        walks[(v, w)] = left + right[::-1]
    return walks


def _walk_edges(walk) -> list:
    return [edge_key(a, b) for a, b in zip(walk, walk[1:])]


def minor_crossing_witnesses(a: AbstractDrawing, m: ShallowModel, walks: Mapping | None = None) -> dict:
    """For independent pattern edges e, f: the host pairs (e0, f0) with e0 on
    P_e, f0 on P_f crossing independently in ``a``."""
    walks = walks or corridor_walks(m)
    dx = {p for p in a.crossings if independent(*p)}
    wedges = {e: _walk_edges(wk) for e, wk in walks.items()}
    out = {}
    pedges = list(m.pattern.edges)
    for i, e in enumerate(pedges):
        for f in pedges[i + 1:]:
            if not independent(e, f):
                continue
            found = [(e0, f0) for e0 in wedges[e] for f0 in wedges[f] if pair_key(e0, f0) in dx]
            if found:
                out[(e, f)] = sorted(set(found))
    return out


def minor_drawing(a: AbstractDrawing, cert: GapCoverCertificate, m: ShallowModel
                  ) -> tuple[AbstractDrawing, GapCoverCertificate]:
    """Drawing of an r-shallow minor with a (2r+1)k gap-cover certificate.

    Each pattern edge is routed along its corridor walk; two independent
    pattern edges cross when some edges of their walks cross independently.
    The bearing and covers are lifted from ``cert`` edge by edge.
    """
    if not verify_gap_cover(a, cert):
        raise MalformedInput("minor_drawing: input certificate does not verify")
    if m.host.edges != a.graph.edges or m.host.vertices != a.graph.vertices:
        raise MalformedInput("minor_drawing: model host differs from the drawn graph")
    bad = validate_model(m)
    if bad:
        raise MalformedInput("minor_drawing: invalid model: " + "; ".join(bad))

    walks = corridor_walks(m)
    witnesses = minor_crossing_witnesses(a, m, walks)
    owner = {x: h for h, bs in m.branch.items() for x in bs}

    bearing = set()
    b0 = cert.bearing.pairs
    for (e, f), pairs in witnesses.items():
        for e0, f0 in pairs:
            if (e0, f0) in b0:
                bearing.add((e, f))
            if (f0, e0) in b0:
                bearing.add((f, e))

    covers = {}
    for e, walk in walks.items():
        hit = set()
        for e0 in _walk_edges(walk):
            hit |= {owner[x] for x in cert.covers.get(e0, ()) if x in owner}
        covers[e] = frozenset(hit - set(e))
    k_new = max((len(c) for c in covers.values()), default=0)
    assert k_new <= (2 * m.r + 1) * cert.k
    a_h = AbstractDrawing(m.pattern, {p: 1 for p in witnesses})
    cert_h = GapCoverCertificate(Bearing(frozenset(bearing)), covers, k_new)
    return a_h, cert_h


# ---------------------------------------------------------------------------
# subdivisions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubdivisionWitness:
    """``paths[(u, v)]`` is a host path from u to v; pattern vertices are
    host vertices (the branch vertices) and each path has at most c
    internal vertices."""

    pattern: Graph
    paths: Mapping
    c: int


def validate_subdivision(host: Graph, w: SubdivisionWitness) -> list[str]:
    out = []
    branch = set(w.pattern.vertices)
    if not branch <= set(host.vertices):
        out.append("branch: pattern vertices must be host vertices")
        return out
    used: dict = {}
    for e in w.pattern.edges:
        path = list(w.paths.get(e, ()))
        if len(path) < 2:
            out.append(f"path: pattern edge {e} has no path")
            continue
        if {path[0], path[-1]} != set(e):
            out.append(f"path: path of {e} does not join its ends")
        if len(set(path)) != len(path):
            out.append(f"path: path of {e} repeats a vertex")
        if any(not host.has_edge(x, y) for x, y in zip(path, path[1:])):
            out.append(f"path: path of {e} uses a non-edge")
        inner = path[1:-1]
        if len(inner) > w.c:
            out.append(f"length: path of {e} has {len(inner)} > c={w.c} internal vertices")
        for x in inner:
            if x in branch:
                out.append(f"disjointness: path of {e} passes through branch vertex {x}")
            elif x in used:
                out.append(f"disjointness: vertex {x} is internal to paths of {used[x]} and {e}")
            used[x] = e
    return out


def contract_subdivision(a: AbstractDrawing, cert: GapCertificate, w: SubdivisionWitness
                         ) -> tuple[AbstractDrawing, GapCertificate]:
    """Drawing of H from a drawing of a subdivision of H, charges carried along.

    Crossings of host edges outside the subdivision are deleted. A crossing
    between two host edges of the same path would be a self-crossing of one
    pattern edge and is dropped as well.
    """
    if not verify_gap(a, cert):
        raise MalformedInput("contract_subdivision: input certificate does not verify")
    bad = validate_subdivision(a.graph, w)
    if bad:
        raise MalformedInput("contract_subdivision: invalid witness: " + "; ".join(bad))
    owner = {}
    for he, path in w.paths.items():
        for g_edge in _walk_edges(path):
            owner[g_edge] = edge_key(*he)
    counts: dict = defaultdict(int)
    charge = {}
    for (e0, f0, i), paid in sorted(cert.charge.items()):
        e, f = owner.get(e0), owner.get(f0)
        if e is None or f is None or e == f:
            continue
        key = pair_key(e, f)
        charge[(key[0], key[1], counts[key])] = owner[paid]
        counts[key] += 1
    load: dict = defaultdict(int)
    for paid in charge.values():
        load[paid] += 1
    k_new = max(load.values(), default=0)
    assert k_new <= (w.c + 1) * cert.k
    return AbstractDrawing(w.pattern, dict(counts)), GapCertificate(charge, k_new)


# ---------------------------------------------------------------------------
# sparsification
# ---------------------------------------------------------------------------


def sparsify(a: AbstractDrawing, cert: GapCoverCertificate, seed: int) -> tuple[Graph, dict]:
    """Keep each vertex with probability 1/(k+1); keep an edge when both ends
    are kept and none of its cover is. The survivors never cross independently.
    """
    if not verify_gap_cover(a, cert):
        raise MalformedInput("sparsify: certificate does not verify")
    g = a.graph
    k = cert.k
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.integers(0, k + 1, size=g.n)
    chosen = [v for v, x in zip(g.vertices, draws) if x == 0]
    keep = set(chosen)
    edges = [e for e in g.edges
             if e[0] in keep and e[1] in keep and not (set(cert.covers.get(e, ())) & keep)]
    h = Graph(tuple(chosen), tuple(edges))
    es = set(edges)
    clash = [p for p in a.crossings if p[0] in es and p[1] in es and independent(*p)]
    assert not clash, f"surviving edges cross independently: {clash[:3]}"
    assert h.m <= 3 * h.n
    trace = {"prng": PRNG_NAME, "seed": seed, "p": str(Fraction(1, k + 1)),
             "chosen": chosen, "kept_edges": [list(e) for e in edges]}
    return h, trace


# ---------------------------------------------------------------------------
# planarization and tree-decomposition lift
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Planarization:
    """``dummy_of[z] = (e, f, occurrence, tail_e, tail_f)`` with edges oriented
    from smaller to larger id; ``chains[e]`` is e's vertex sequence in G';
    ``segment_of[s]`` lists the original edges running along G'-edge s."""

    original: Graph
    planar_graph: Graph
    dummy_of: Mapping
    chains: Mapping
    segment_of: Mapping


def planarize(d: GeometricDrawing) -> Planarization:
    g = d.graph
    points = crossing_points(d)
    nxt = max(g.vertices, default=-1) + 1
    dummy_of = {}
    along = defaultdict(list)
    for e, f, occ, _, pe, pf in points:
        z = nxt
        nxt += 1
        dummy_of[z] = (e, f, occ, e[0], f[0])
        along[e].append((pe, z))
        along[f].append((pf, z))
    chains = {}
    segment_of: dict = defaultdict(list)
    for e in g.edges:
        chain = [e[0]] + [z for _, z in sorted(along[e])] + [e[1]]
        chains[e] = chain
        for x, y in zip(chain, chain[1:]):
            segment_of[edge_key(x, y)].append(e)
    planar = Graph(tuple(g.vertices) + tuple(dummy_of), tuple(segment_of))
    return Planarization(g, planar, dummy_of, chains, dict(segment_of))


def lift_tree_decomposition(p: Planarization, td_prime: TreeDecomposition) -> TreeDecomposition:
    """Replace each dummy in every bag by the tails of its two crossing edges."""
    bad = validate_tree_decomposition(p.planar_graph, td_prime)
    if bad:
        raise MalformedInput("lift_tree_decomposition: invalid decomposition: " + "; ".join(bad))
    bags = {}
    for node, bag in td_prime.bags.items():
        out = set()
        for x in bag:
            if x in p.dummy_of:
                _, _, _, ta, tb = p.dummy_of[x]
                out |= {ta, tb}
            else:
                out.add(x)
        bags[node] = frozenset(out)
    return TreeDecomposition(td_prime.tree, bags)
