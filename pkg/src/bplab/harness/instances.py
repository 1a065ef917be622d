"""Random witnesses used to replay the constructions on generated drawings."""

from __future__ import annotations

import random

from ..constructions import ShallowModel, SubdivisionWitness, validate_model, validate_subdivision
from ..graphcore import Graph, edge_key


def random_shallow_model(g: Graph, r: int, seed: int, grow: float = 0.6,
                         keep_edge: float = 0.85) -> ShallowModel:
    """Branch sets grown breadth-first from random centers, r layers deep.

    Every vertex joins at most one branch set, each layer adds a random
    subset of the free neighbours, so each set has radius <= r around its
    center. Pattern edges are a random subset of the realizable ones.
    """
    rng = random.Random(seed)
    free = set(g.vertices)
    branch, center = {}, {}
    order = list(g.vertices)
    rng.shuffle(order)
    for c in order:
        if c not in free or rng.random() > grow:
            continue
        free.discard(c)
        members = {c}
        layer = [c]
        for _ in range(r):
            nxt = []
            for x in layer:
                for y in g.adj[x]:
                    if y in free and rng.random() < 0.5:
                        free.discard(y)
                        members.add(y)
                        nxt.append(y)
            layer = nxt
        h = len(branch)
        branch[h] = frozenset(members)
        center[h] = c
    owner = {x: h for h, bs in branch.items() for x in bs}
    witness = {}
    for u, v in g.edges:
        if u in owner and v in owner and owner[u] != owner[v]:
            key = edge_key(owner[u], owner[v])
            witness.setdefault(key, (u, v))
    kept = {e: w for e, w in sorted(witness.items()) if rng.random() < keep_edge}
    pattern = Graph(tuple(sorted(branch)), tuple(kept))
    m = ShallowModel(g, pattern, branch, center, r, kept)
    assert not validate_model(m), validate_model(m)
    return m


def random_subdivision_witness(g: Graph, c: int, seed: int, keep_edge: float = 0.9,
                               attempts: int | None = None) -> SubdivisionWitness:
    """Find a subdivision inside g by suppressing degree-2 vertices.

    Starts from a random spanning subgraph and repeatedly merges the two
    paths at a degree-2 vertex while the pattern stays simple and every path
    keeps at most c internal vertices.
    """
    rng = random.Random(seed)
    paths = {e: [e[0], e[1]] for e in g.edges if rng.random() < keep_edge}
    vertices = set(g.vertices)
    for _ in range(attempts if attempts is not None else 4 * g.n):
        incident: dict = {}
        for e in paths:
            for x in e:
                incident.setdefault(x, []).append(e)
        cands = sorted(x for x in vertices if len(incident.get(x, [])) == 2)
        if not cands:
            break
        x = rng.choice(cands)
        e1, e2 = incident[x]
        a = e1[0] if e1[1] == x else e1[1]
        b = e2[0] if e2[1] == x else e2[1]
        if a == b or edge_key(a, b) in paths:
            continue
        p1 = paths[e1] if paths[e1][-1] == x else paths[e1][::-1]   # a .. x
        p2 = paths[e2] if paths[e2][0] == x else paths[e2][::-1]    # x .. b
        merged = p1 + p2[1:]
        if len(merged) - 2 > c:
            continue
        del paths[e1], paths[e2]
        key = edge_key(a, b)
        paths[key] = merged if merged[0] == key[0] else merged[::-1]
        vertices.discard(x)
    inner = {x for p in paths.values() for x in p[1:-1]}
    pattern = Graph.from_edges(paths, sorted(set(g.vertices) - inner))
    w = SubdivisionWitness(pattern, paths, c)
    assert not validate_subdivision(g, w), validate_subdivision(g, w)
    return w
