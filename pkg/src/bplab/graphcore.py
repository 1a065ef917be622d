"""Graphs, density, degeneracy, tree decompositions and exact treewidth."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InstanceTooLarge, MalformedInput

TREEWIDTH_CAP = 14


def edge_key(u, v) -> tuple:
    """Canonical (sorted) key of the undirected edge uv."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted, hashable vertex ids.

    Vertex ids are ints for ordinary graphs; crossing graphs use edge keys
    (tuples) as vertex ids. Iteration order is always sorted.
    """

    vertices: tuple
    edges: tuple
    labels: Mapping = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise MalformedInput("duplicate vertex ids")
        vset = set(verts)
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise MalformedInput(f"self-loop at {u!r}")
            if u not in vset or v not in vset:
                raise MalformedInput(f"edge {u!r}-{v!r} has an undeclared endpoint")
            key = edge_key(u, v)
            if key in seen:
                raise MalformedInput(f"duplicate edge {u!r}-{v!r}")
            seen.add(key)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable | None = None) -> "Graph":
        edges = [edge_key(u, v) for u, v in edges]
        edges = sorted(set(edges))
        vs = set(vertices) if vertices is not None else set()
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(tuple(vs), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> dict:
        out = {v: set() for v in self.vertices}
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return {v: frozenset(ns) for v, ns in out.items()}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbors(self, v) -> list:
        return sorted(self.adj[v])

    def degree(self, v) -> int:
        return len(self.adj[v])

    def has_edge(self, u, v) -> bool:
        return edge_key(u, v) in self.edge_set

    def subgraph(self, vertices: Iterable) -> "Graph":
        keep = set(vertices)
        return Graph(tuple(keep), tuple(e for e in self.edges if e[0] in keep and e[1] in keep))

    def edge_subgraph(self, edges: Iterable) -> "Graph":
        return Graph.from_edges(edges)

    def is_connected_set(self, vertices: Iterable) -> bool:
        vs = set(vertices)
        if not vs:
            return False
        start = min(vs)
        seen = {start}
        queue = [start]
        while queue:
            x = queue.pop()
            for y in self.adj[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen == vs

    def bfs_distances(self, source, within: Iterable | None = None) -> dict:
        allowed = None if within is None else set(within)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in sorted(self.adj[x]):
                if y in dist or (allowed is not None and y not in allowed):
                    continue
                dist[y] = dist[x] + 1
                queue.append(y)
        return dist

    def relabel(self, mapping: Mapping) -> "Graph":
        return Graph(tuple(mapping[v] for v in self.vertices),
                     tuple(edge_key(mapping[u], mapping[v]) for u, v in self.edges))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(combinations(range(n), 2), range(n))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(((i, (i + 1) % n) for i in range(n)), range(n))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(((i, i + 1) for i in range(n - 1)), range(n))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(((i, a + j) for i in range(a) for j in range(b)), range(a + b))


def empty_graph(n: int) -> Graph:
    return Graph(tuple(range(n)), ())


# ---------------------------------------------------------------------------
# density and degeneracy
# ---------------------------------------------------------------------------


def density(g: Graph) -> Fraction:
    if g.n == 0:
        return Fraction(0)
    return Fraction(g.m, g.n)


@dataclass(frozen=True)
class VertexOrdering:
    """Total order of a vertex set, stored as a rank map (ranks 1..n)."""

    rank: Mapping

    def __post_init__(self):
        if sorted(self.rank.values()) != list(range(1, len(self.rank) + 1)):
            raise MalformedInput("ranks must be a bijection onto 1..n")

    @classmethod
    def from_sequence(cls, seq: Sequence) -> "VertexOrdering":
        return cls({v: i + 1 for i, v in enumerate(seq)})

    @property
    def sequence(self) -> list:
        return sorted(self.rank, key=self.rank.__getitem__)

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering.from_sequence(self.sequence[::-1])

    def precedes(self, u, v) -> bool:
        return self.rank[u] < self.rank[v]


def degeneracy(g: Graph, mult: dict | None = None) -> tuple[int, VertexOrdering]:
    """Degeneracy with its elimination order.

    Repeatedly removes a minimum-degree vertex (ties by id). In the returned
    order every vertex has at most ``d`` neighbours that come later. With
    ``mult`` (edge -> multiplicity) degrees count parallel edges.
    """
    def w(u, v):
        return 1 if mult is None else mult[(u, v) if (u, v) in mult else (v, u)]

    deg = {v: sum(w(v, x) for x in g.adj[v]) for v in g.vertices}
    alive = set(g.vertices)
    order = []
    d = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        order.append(v)
        alive.remove(v)
        for x in g.adj[v]:
            if x in alive:
                deg[x] -= w(v, x)
    return d, VertexOrdering.from_sequence(order)


def later_neighbor_counts(g: Graph, order: VertexOrdering) -> dict:
    return {v: sum(1 for w in g.adj[v] if order.rank[w] > order.rank[v]) for v in g.vertices}


# ---------------------------------------------------------------------------
# integer max-flow
# ---------------------------------------------------------------------------


class MaxFlow:
    """Dinic max-flow on integer capacities."""

    def __init__(self, n: int):
        self.n = n
        self.head = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> int:
        idx = len(self.to)
        self.to += [v, u]
        self.cap += [c, 0]
        self.head[u].append(idx)
        self.head[v].append(idx + 1)
        return idx

    def flow_on(self, idx: int) -> int:
        return self.cap[idx ^ 1]

    def _levels(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for i in self.head[u]:
                if self.cap[i] > 0 and level[self.to[i]] < 0:
                    level[self.to[i]] = level[u] + 1
                    queue.append(self.to[i])
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                total += pushed

    def _augment(self, s: int, t: int, level, it) -> int:
        # iterative DFS along the level graph
        path: list[int] = []
        u = s
        while True:
            if u == t:
                f = min(self.cap[i] for i in path)
                for i in path:
                    self.cap[i] -= f
                    self.cap[i ^ 1] += f
                return f
            advanced = False
            while it[u] < len(self.head[u]):
                i = self.head[u][it[u]]
                v = self.to[i]
                if self.cap[i] > 0 and level[v] == level[u] + 1:
                    path.append(i)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if u == s:
                    return 0
                level[u] = -1
                i = path.pop()
                u = self.to[i ^ 1]
                it[u] += 1

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for i in self.head[u]:
                if self.cap[i] > 0 and self.to[i] not in seen:
                    seen.add(self.to[i])
                    stack.append(self.to[i])
        return seen


# ---------------------------------------------------------------------------
# densest subgraph
# ---------------------------------------------------------------------------


def _closure_excess(vertices, weighted_edges, total, threshold: Fraction):
    """max over S of q*|E(S)| - p*|S| at threshold p/q, with a maximiser.

    Source -> edge-node (q * multiplicity), edge-node -> endpoints (inf),
    vertex -> sink (p). Returns (value, S).
    """
    p, q = threshold.numerator, threshold.denominator
    index = {v: i for i, v in enumerate(vertices)}
    nv = len(vertices)
    s, t = nv + len(weighted_edges), nv + len(weighted_edges) + 1
    net = MaxFlow(t + 1)
    inf = q * total + 1
    for j, (u, v, mult) in enumerate(weighted_edges):
        node = nv + j
        net.add_edge(s, node, q * mult)
        net.add_edge(node, index[u], inf)
        net.add_edge(node, index[v], inf)
    for v in vertices:
        net.add_edge(index[v], t, p)
    cut = net.max_flow(s, t)
    side = net.source_side(s)
    chosen = [v for v in vertices if index[v] in side]
    return q * total - cut, chosen


def max_subgraph_density(g: Graph, multiplicity: Mapping | None = None) -> tuple[Fraction, list]:
    """Exact maximum of |E'|/|V'| over nonempty subgraphs, with a witness.

    ``multiplicity`` optionally weights edges (a multigraph's edge counts).
    Binary search over the finite set of candidate ratios a/b, b <= n,
    one min-cut per probe.
    """
    if g.n == 0:
        return Fraction(0), []
    mult = {e: (multiplicity.get(e, 1) if multiplicity else 1) for e in g.edges}
    weighted = [(u, v, mult[(u, v)]) for u, v in g.edges if mult[(u, v)] > 0]
    total = sum(w for _, _, w in weighted)
    if total == 0:
        return Fraction(0), [g.vertices[0]]
    cands = sorted({Fraction(a, b) for b in range(1, g.n + 1) for a in range(0, total + 1)
                    if Fraction(a, b) <= Fraction(total, 1)})
    # invariant: excess(cands[lo]) > 0, excess(cands[hi]) == 0
    lo, hi = 0, len(cands) - 1
    best_set = None
    value, chosen = _closure_excess(g.vertices, weighted, total, cands[lo])
    assert value > 0
    best_set = chosen
    while hi - lo > 1:
        mid = (lo + hi) // 2
        value, chosen = _closure_excess(g.vertices, weighted, total, cands[mid])
        if value > 0:
            lo, best_set = mid, chosen
        else:
            hi = mid
    witness = sorted(best_set)
    rho = cands[hi]
    sub = g.subgraph(witness)
    got = Fraction(sum(mult[e] for e in sub.edges), len(witness))
    assert got == rho, (got, rho)
    return rho, witness


def max_subgraph_density_bruteforce(g: Graph, multiplicity: Mapping | None = None) -> Fraction:
    best = Fraction(0)
    verts = list(g.vertices)
    for size in range(1, len(verts) + 1):
        for sub in combinations(verts, size):
            s = set(sub)
            m = sum((multiplicity.get(e, 1) if multiplicity else 1)
                    for e in g.edges if e[0] in s and e[1] in s)
            best = max(best, Fraction(m, size))
    return best


# ---------------------------------------------------------------------------
# tree decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: Mapping

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1


def _is_tree(t: Graph) -> bool:
    return t.n >= 1 and t.m == t.n - 1 and t.is_connected_set(t.vertices)


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> list[str]:
    """Violations of the three decomposition axioms; empty when valid."""
    out = []
    if not _is_tree(td.tree):
        out.append("tree: decomposition tree is not a tree")
    if set(td.bags) != set(td.tree.vertices):
        out.append("tree: bag keys differ from tree nodes")
    for node, bag in sorted(td.bags.items()):
        stray = sorted(set(bag) - set(g.vertices))
        if stray:
            out.append(f"bag: node {node} contains non-vertices {stray}")
    holders: dict = {v: [] for v in g.vertices}
    for node, bag in td.bags.items():
        for v in bag:
            if v in holders:
                holders[v].append(node)
    for v in g.vertices:
        if not holders[v]:
            out.append(f"vertex: {v} occurs in no bag")
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in td.bags.values()):
            out.append(f"edge: {u}-{v} has no bag containing both ends")
    for v in g.vertices:
        nodes = [x for x in holders[v] if x in set(td.tree.vertices)]
        if nodes and not td.tree.is_connected_set(nodes):
            out.append(f"subtree: bags containing {v} are not connected")
    return out


def decomposition_from_order(g: Graph, order: Sequence) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    if g.n == 0:
        return TreeDecomposition(Graph((0,), ()), {0: frozenset()})
    pos = {v: i for i, v in enumerate(order)}
    nbrs = {v: set(g.adj[v]) for v in g.vertices}
    bags = {}
    parent = {}
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        bags[v] = frozenset(later | {v})
        for a in later:
            nbrs[a] |= later - {a}
        parent[v] = min(later, key=pos.__getitem__) if later else None
    nodes = list(order)
    tree_edges = [(v, parent[v]) for v in nodes if parent[v] is not None]
    roots = [v for v in nodes if parent[v] is None]
    tree_edges += list(zip(roots, roots[1:]))
    index = {v: i for i, v in enumerate(nodes)}
    tree = Graph.from_edges(((index[a], index[b]) for a, b in tree_edges), range(len(nodes)))
    return TreeDecomposition(tree, {index[v]: bags[v] for v in nodes})


def _min_degree_order(g: Graph) -> tuple[int, list]:
    nbrs = {v: set(g.adj[v]) for v in g.vertices}
    order, width = [], 0
    alive = set(g.vertices)
    while alive:
        v = min(alive, key=lambda x: (len(nbrs[x]), x))
        width = max(width, len(nbrs[v]))
        for a in nbrs[v]:
            nbrs[a] |= nbrs[v] - {a}
            nbrs[a].discard(v)
        alive.remove(v)
        order.append(v)
    return width, order


def treewidth_exact(g: Graph, cap: int = TREEWIDTH_CAP) -> tuple[int, TreeDecomposition]:
    """Exact treewidth by search over elimination prefixes.

    For a set S of already-eliminated vertices the cost of eliminating v next
    is the number of vertices outside S + v reachable from v through S; the
    width is the maximum cost along the order. Feasibility of width k is a
    memoised DFS over subsets, tried for k from degeneracy upward.
    """
    if g.n > cap:
        raise InstanceTooLarge(f"treewidth_exact: {g.n} vertices exceeds cap {cap}")
    if g.n == 0:
        return -1, decomposition_from_order(g, [])
    verts = list(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    nb = [0] * len(verts)
    for u, v in g.edges:
        nb[idx[u]] |= 1 << idx[v]
        nb[idx[v]] |= 1 << idx[u]
    full = (1 << len(verts)) - 1

    def cost(s: int, i: int) -> int:
        comp = 1 << i
        frontier = comp
        inside = s | comp
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= nb[low.bit_length() - 1]
                f ^= low
            grow &= inside & ~comp
            comp |= grow
            frontier = grow
        reach = 0
        c = comp
        while c:
            low = c & -c
            reach |= nb[low.bit_length() - 1]
            c ^= low
        return bin(reach & ~inside).count("1")

    upper, heuristic_order = _min_degree_order(g)
    lower, _ = degeneracy(g)
    if lower == upper:
        return upper, decomposition_from_order(g, heuristic_order)

    for k in range(lower, upper):
        dead: set[int] = set()
        order: list[int] = []

        def search(s: int) -> bool:
            if s == full:
                return True
            if s in dead:
                return False
            rest = full & ~s
            while rest:
                low = rest & -rest
                i = low.bit_length() - 1
                rest ^= low
                if cost(s, i) <= k:
                    order.append(i)
                    if search(s | low):
                        return True
                    order.pop()
            dead.add(s)
            return False

        if search(0):
            return k, decomposition_from_order(g, [verts[i] for i in order])
    return upper, decomposition_from_order(g, heuristic_order)
