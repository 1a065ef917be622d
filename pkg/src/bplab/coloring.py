"""Strong r-reachability, strong colouring numbers and acyclic colourings."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InstanceTooLarge
from .graphcore import Graph, VertexOrdering

SCOL_CAP = 9
ACYCLIC_CAP = 10


def _reach_from(g: Graph, v, r: int, later: set) -> set:
    """v plus every w not in ``later`` joined to v by a path of length <= r
    whose internal vertices all lie in ``later``."""
    out = {v}
    frontier = [v]
    seen = {v}
    for _ in range(r):
        nxt = []
        for x in frontier:
            for y in g.adj[x]:
                if y in seen:
                    continue
                seen.add(y)
                if y in later:
                    nxt.append(y)
                else:
                    out.add(y)
        frontier = nxt
    return out


def sreach(g: Graph, ord: VertexOrdering, v, r: int) -> set:
    """Vertices w <= v reachable from v by a path of length <= r whose
    internal vertices all come strictly after v; includes v itself."""
    later = {x for x in g.vertices if ord.rank[x] > ord.rank[v]}
    return _reach_from(g, v, r, later)


def scol_of_order(g: Graph, ord: VertexOrdering, r: int) -> int:
    return max((len(sreach(g, ord, v, r)) for v in g.vertices), default=0)


def scol_exact(g: Graph, r: int, cap: int = SCOL_CAP) -> tuple[int, VertexOrdering]:
    """Exact scol_r with an optimal order.

    sreach(v) depends only on the set of vertices placed after v, so the
    order is built from the back: f(S) is the best achievable maximum over
    the vertices in the suffix set S.
    """
    if g.n > cap:
        raise InstanceTooLarge(f"scol_exact: {g.n} vertices exceeds cap {cap}")
    verts = list(g.vertices)
    n = len(verts)
    if n == 0:
        return 0, VertexOrdering({})
    best = {0: 0}
    choice = {}
    for size in range(1, n + 1):
        for s in [m for m in range(1 << n) if bin(m).count("1") == size]:
            top = None
            for i in range(n):
                if not s >> i & 1:
                    continue
                rest = s & ~(1 << i)
                later = {verts[j] for j in range(n) if rest >> j & 1}
                val = max(best[rest], len(_reach_from(g, verts[i], r, later)))
                if top is None or val < top:
                    top, choice[s] = val, i
            best[s] = top
    seq = []
    s = (1 << n) - 1
    while s:
        i = choice[s]
        seq.append(verts[i])
        s &= ~(1 << i)
    # choice[s] is the earliest vertex of suffix s
    return best[(1 << n) - 1], VertexOrdering.from_sequence(seq)


def scol_greedy(g: Graph, r: int) -> tuple[int, VertexOrdering]:
    """Upper bound: repeatedly place last the vertex with the smallest reach
    into the still-unplaced vertices (ties by id)."""
    remaining = set(g.vertices)
    placed_back = []
    later: set = set()
    while remaining:
        v = min(remaining, key=lambda x: (len(_reach_from(g, x, r, later)), x))
        remaining.remove(v)
        later.add(v)
        placed_back.append(v)
    order = VertexOrdering.from_sequence(placed_back[::-1])
    return scol_of_order(g, order, r), order


# ---------------------------------------------------------------------------
# acyclic colouring
# ---------------------------------------------------------------------------


def is_acyclic_coloring(g: Graph, coloring: dict) -> bool:
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            return False
    colors = sorted(set(coloring.values()))
    for i, a in enumerate(colors):
        for b in colors[i + 1:]:
            sub = g.subgraph(v for v in g.vertices if coloring[v] in (a, b))
            comps = 0
            seen = set()
            for v in sub.vertices:
                if v in seen:
                    continue
                comps += 1
                stack = [v]
                seen.add(v)
                while stack:
                    x = stack.pop()
                    for y in sub.adj[x]:
                        if y not in seen:
                            seen.add(y)
                            stack.append(y)
            if sub.m != sub.n - comps:
                return False
    return True


def _connected_within(g: Graph, coloring: dict, pair: tuple, a, b) -> bool:
    """Is b reachable from a using only vertices coloured from ``pair``?"""
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for y in g.adj[x]:
            if y not in seen and coloring.get(y) in pair:
                seen.add(y)
                stack.append(y)
    return False


def acyclic_chromatic_exact(g: Graph, cap: int = ACYCLIC_CAP) -> tuple[int, dict]:
    """Fewest colours in a proper colouring whose 2-colour unions are forests."""
    if g.n > cap:
        raise InstanceTooLarge(f"acyclic_chromatic_exact: {g.n} vertices exceeds cap {cap}")
    if g.n == 0:
        return 0, {}
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    coloring: dict = {}

    def fits(v, c) -> bool:
        if any(coloring.get(u) == c for u in g.adj[v]):
            return False
        by_color: dict = {}
        for u in g.adj[v]:
            if u in coloring:
                by_color.setdefault(coloring[u], []).append(u)
        for d, us in by_color.items():
            # two d-neighbours already joined by a c/d path close a cycle through v
            for i in range(len(us)):
                for j in range(i + 1, len(us)):
                    if _connected_within(g, coloring, (c, d), us[i], us[j]):
                        return False
        return True

    def search(i: int, k: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            if fits(v, c):
                coloring[v] = c
                if search(i + 1, k, max(used, c + 1)):
                    return True
                del coloring[v]
        return False

    for k in range(1, g.n + 1):
        coloring.clear()
        if search(0, k, 0):
            return k, dict(coloring)
    raise AssertionError("unreachable: n colours always suffice")


@dataclass(frozen=True)
class AcnReport:
    chi_a: int
    scol2: int
    coloring: dict
    order: VertexOrdering

    @property
    def holds(self) -> bool:
        return self.chi_a <= self.scol2


def check_acn(g: Graph, scol_cap: int = SCOL_CAP, acyclic_cap: int = ACYCLIC_CAP) -> AcnReport:
    chi, coloring = acyclic_chromatic_exact(g, acyclic_cap)
    s2, order = scol_exact(g, 2, scol_cap)
    report = AcnReport(chi, s2, coloring, order)
    assert report.holds, f"acyclic chromatic number {chi} exceeds scol_2 {s2}"
    return report
