"""Exact r-shallow minor and r-shallow topological minor densities by search.

Minor side: deleting a vertex is the same as giving it a singleton branch
set and then dropping that pattern vertex, so nabla_r is the maximum over
partitions of V into connected blocks of radius <= r of the densest
subgraph of the quotient graph.

Topological side: for each branch-vertex set, pattern edges are the direct
edges plus a maximum packing of internally disjoint short paths through the
remaining vertices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .constructions import ShallowModel, SubdivisionWitness
from .errors import InstanceTooLarge
from .graphcore import Graph, edge_key

EXPANSION_CAP = 11


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _adjacency_masks(g: Graph):
    verts = list(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    nb = [0] * len(verts)
    for u, v in g.edges:
        nb[idx[u]] |= 1 << idx[v]
        nb[idx[v]] |= 1 << idx[u]
    return verts, nb


def _radius_center(mask: int, nb: list[int], r: int):
    """Smallest-index vertex of ``mask`` whose eccentricity inside it is <= r."""
    for c in _bits(mask):
        seen = 1 << c
        frontier = seen
        for _ in range(r):
            grow = 0
            for i in _bits(frontier):
                grow |= nb[i]
            frontier = grow & mask & ~seen
            seen |= frontier
            if not frontier:
                break
        if seen == mask:
            return c
    return None


def shallow_blocks(g: Graph, r: int) -> dict:
    """Map each connected vertex mask of radius <= r to a center index."""
    verts, nb = _adjacency_masks(g)
    out = {}
    n = len(verts)
    for i in range(n):
        out[1 << i] = i
    if r == 0:
        return out
    # grow connected sets containing their minimum vertex
    for low in range(n):
        stack = [1 << low]
        seen = {1 << low}
        while stack:
            s = stack.pop()
            border = 0
            for i in _bits(s):
                border |= nb[i]
            border &= ~s & ~((1 << low) - 1)
            for i in _bits(border):
                t = s | (1 << i)
                if t in seen:
                    continue
                seen.add(t)
                c = _radius_center(t, nb, r)
                # a set of radius > r can still grow into one of radius <= r
                if c is not None:
                    out[t] = c
                stack.append(t)
    return out


def _densest_bitmask(nb: list[int]) -> tuple[int, int, int]:
    """(edges, vertices, mask) of a densest nonempty induced subgraph.

    Subset DP over all 2^q masks: E(S) = E(S - low) + |N(low) & S|.
    Ties prefer fewer vertices, then the smaller mask.
    """
    q = len(nb)
    edges = [0] * (1 << q)
    best = (0, 1, 1)
    for mask in range(1, 1 << q):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        e = edges[rest] + bin(nb[i] & rest).count("1")
        edges[mask] = e
        size = bin(mask).count("1")
        be, bs, bm = best
        if e * bs > be * size or (e * bs == be * size and (size, mask) < (bs, bm)):
            best = (e, size, mask)
    return best


def _witness_key(rho: Fraction, blocks: list) -> tuple:
    return (-rho, len(blocks), sorted(blocks))


def nabla(g: Graph, r: int, cap: int = EXPANSION_CAP) -> tuple[Fraction, ShallowModel]:
    """Exact maximum density of an r-shallow minor, with a model."""
    if g.n > cap:
        raise InstanceTooLarge(f"nabla: {g.n} vertices exceeds cap {cap}")
    verts, nb = _adjacency_masks(g)
    n = len(verts)
    if n == 0 or g.m == 0:
        return Fraction(0), _model(g, r, verts, nb, [1 << 0] if n else [], {1: 0} if n else {})
    blocks = shallow_blocks(g, r)
    by_min: list[list[int]] = [[] for _ in range(n)]
    for mask in sorted(blocks, key=lambda b: (bin(b).count("1"), b)):
        by_min[(mask & -mask).bit_length() - 1].append(mask)

    best = {"key": None, "blocks": None, "num": 0, "den": 1}
    full = (1 << n) - 1

    def evaluate(part: list[int]):
        q = len(part)
        bnb = [0] * q
        for i in range(q):
            reach = 0
            for x in _bits(part[i]):
                reach |= nb[x]
            for j in range(q):
                if j != i and reach & part[j]:
                    bnb[i] |= 1 << j
        mq = sum(bin(x).count("1") for x in bnb) // 2
        if mq == 0:
            return
        num, den = best["num"], best["den"]
        if best["key"] is not None:
            # any s-vertex subgraph has density <= min(mq/s, (s-1)/2)
            if all(mq * den < num * s or (s - 1) * den < 2 * num for s in range(1, q + 1)):
                return
        e_best, s_best, mask = _densest_bitmask(bnb)
        if best["key"] is not None and e_best * den < num * s_best:
            return
        chosen = [part[i] for i in _bits(mask)]
        key = _witness_key(Fraction(e_best, s_best), chosen)
        if best["key"] is None or key < best["key"]:
            best.update(key=key, blocks=chosen, num=e_best, den=s_best)

    def extend(avail: int, part: list[int]):
        if not avail:
            evaluate(part)
            return
        v = (avail & -avail).bit_length() - 1
        for b in by_min[v]:
            if b & ~avail == 0:
                part.append(b)
                extend(avail & ~b, part)
                part.pop()

    extend(full, [])
    rho = -best["key"][0]
    return rho, _model(g, r, verts, nb, best["blocks"], blocks)


def _model(g: Graph, r: int, verts, nb, chosen: list[int], centers: dict) -> ShallowModel:
    branch, center = {}, {}
    for h, mask in enumerate(chosen):
        branch[h] = frozenset(verts[i] for i in _bits(mask))
        center[h] = verts[centers[mask]]
    witness = {}
    pedges = []
    for h1, h2 in combinations(range(len(chosen)), 2):
        hits = sorted(edge_key(x, y) for x in branch[h1] for y in branch[h2] if g.has_edge(x, y))
        if hits:
            pedges.append((h1, h2))
            witness[(h1, h2)] = hits[0]
    pattern = Graph(tuple(range(len(chosen))), tuple(pedges))
    return ShallowModel(g, pattern, branch, center, r, witness)


# ---------------------------------------------------------------------------
# topological minors
# ---------------------------------------------------------------------------


def _short_paths(nb, u: int, v: int, free: int, limit: int) -> list[tuple[int, tuple]]:
    """Paths u..v with at most ``limit`` internal vertices, all in ``free``.

    Returns (internal mask, internal sequence), keeping only paths whose
    internal set is inclusion-minimal.
    """
    found = []

    def walk(x: int, used: int, seq: list[int]):
        if len(seq) > limit:
            return
        if nb[x] >> v & 1 and seq:
            found.append((used, tuple(seq)))
            return
        if len(seq) == limit:
            return
        for y in _bits(nb[x] & free & ~used):
            seq.append(y)
            walk(y, used | (1 << y), seq)
            seq.pop()

    walk(u, 0, [])
    found.sort(key=lambda t: (bin(t[0]).count("1"), t[0], t[1]))
    minimal = []
    for mask, seq in found:
        if not any(m & mask == m for m, _ in minimal):
            minimal.append((mask, seq))
    return minimal


def _pack(options: list[list], free: int) -> tuple[int, list]:
    """Max number of pairs served by pairwise disjoint internal sets."""
    best = [0, []]
    n = len(options)

    def go(i: int, used: int, chosen: list):
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), list(chosen)
        if i == n:
            return
        room = bin(free & ~used).count("1")
        if len(chosen) + min(n - i, room) <= best[0]:
            return
        for mask, seq in options[i][1]:
            if mask & used == 0:
                chosen.append((options[i][0], seq))
                go(i + 1, used | mask, chosen)
                chosen.pop()
        go(i + 1, used, chosen)

    go(0, 0, [])
    return best[0], best[1]


def topo_nabla(g: Graph, r: int, cap: int = EXPANSION_CAP) -> tuple[Fraction, SubdivisionWitness]:
    """Exact maximum density of an r-shallow topological minor, with witness."""
    if g.n > cap:
        raise InstanceTooLarge(f"topo_nabla: {g.n} vertices exceeds cap {cap}")
    verts, nb = _adjacency_masks(g)
    n = len(verts)
    limit = 2 * r
    best_key = None
    best = None
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            bmask = sum(1 << i for i in combo)
            direct = [(i, j) for i, j in combinations(combo, 2) if nb[i] >> j & 1]
            missing = [(i, j) for i, j in combinations(combo, 2) if not nb[i] >> j & 1]
            free = full & ~bmask
            extra_cap = min(len(missing), bin(free).count("1")) if limit else 0
            upper = Fraction(len(direct) + extra_cap, size)
            if best_key is not None and upper <= -best_key[0]:
                continue
            extra = []
            if extra_cap:
                options = []
                for i, j in missing:
                    ps = _short_paths(nb, i, j, free, limit)
                    if ps:
                        options.append(((i, j), ps))
                _, extra = _pack(options, free)
            rho = Fraction(len(direct) + len(extra), size)
            key = (-rho, size, combo)
            if best_key is None or key < best_key:
                best_key = key
                best = (combo, direct, extra)
    if best is None:
        return Fraction(0), SubdivisionWitness(Graph((), ()), {}, limit)
    combo, direct, extra = best
    paths = {}
    for i, j in direct:
        paths[edge_key(verts[i], verts[j])] = [verts[i], verts[j]] if verts[i] < verts[j] else [verts[j], verts[i]]
    for (i, j), seq in extra:
        p = [verts[i]] + [verts[x] for x in seq] + [verts[j]]
        key = edge_key(verts[i], verts[j])
        paths[key] = p if p[0] == key[0] else p[::-1]
    pattern = Graph.from_edges(paths, [verts[i] for i in combo])
    return -best_key[0], SubdivisionWitness(pattern, paths, limit)
