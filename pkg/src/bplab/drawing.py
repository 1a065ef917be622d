"""Geometric drawings with exact rational coordinates and their crossing structure.

All predicates are evaluated with ``Fraction`` arithmetic; there is no
tolerance anywhere. A drawing is accepted only in general position: every
contact between two different edges must be a proper crossing of two
segment interiors, and no point is shared by three edges.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import InvalidDrawing, MalformedInput
from .graphcore import Graph, edge_key

Point = tuple  # (Fraction, Fraction)


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a)."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    return (orient(a, b, p) == 0
            and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_contact(a: Point, b: Point, c: Point, d: Point):
    """Classify how closed segments ab and cd meet.

    Returns ``None`` (disjoint), ``("proper", p, s, t)`` for an interior
    crossing at p = a + s(b-a) = c + t(d-c), ``("overlap",)`` for a collinear
    overlap of positive length, or ``("touch", p)`` for any other contact.
    """
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 == o2 == 0:
        # collinear: project on the dominant axis
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return None
        if lo < hi:
            return ("overlap",)
        for p in (a, b):
            if on_segment(p, c, d):
                return ("touch", p)
        return ("touch", c if on_segment(c, a, b) else d)
    if o1 * o2 < 0 and o3 * o4 < 0:
        rx, ry = b[0] - a[0], b[1] - a[1]
        sx, sy = d[0] - c[0], d[1] - c[1]
        den = rx * sy - ry * sx
        s = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den
        t = ((c[0] - a[0]) * ry - (c[1] - a[1]) * rx) / den
        return ("proper", (a[0] + s * rx, a[1] + s * ry), s, t)
    for p, (u, v) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if on_segment(p, u, v):
            return ("touch", p)
    return None


@dataclass(frozen=True)
class GeometricDrawing:
    """Vertices at rational points; each edge routed as a polyline.

    ``routes[(u, v)]`` runs from u's point to v's point for the edge key
    (u, v) with u < v. Missing routes default to straight segments.
    """

    graph: Graph
    positions: Mapping
    routes: Mapping = field(default_factory=dict)

    def __post_init__(self):
        pos = {v: point(*p) for v, p in self.positions.items()}
        routes = {}
        for e in self.graph.edges:
            if e in self.routes:
                routes[e] = tuple(point(*p) for p in self.routes[e])
            elif e[0] in pos and e[1] in pos:
                routes[e] = (pos[e[0]], pos[e[1]])
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "routes", routes)

    def segments(self, e) -> list:
        r = self.routes[e]
        return list(zip(r, r[1:]))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_drawing(d: GeometricDrawing) -> list[str]:
    """Violations of general position; an empty list means valid."""
    g = d.graph
    out = []
    missing = [v for v in g.vertices if v not in d.positions]
    if missing:
        return [f"position: vertices {missing} have no position"]
    by_point = defaultdict(list)
    for v in g.vertices:
        by_point[d.positions[v]].append(v)
    for p, vs in sorted(by_point.items()):
        if len(vs) > 1:
            out.append(f"distinct points: vertices {sorted(vs)} share a point")
    vertex_at = {p: vs[0] for p, vs in by_point.items()}

    for e in g.edges:
        r = d.routes.get(e)
        if r is None or len(r) < 2:
            out.append(f"route: edge {e[0]}-{e[1]} has no route")
            continue
        if r[0] != d.positions[e[0]] or r[-1] != d.positions[e[1]]:
            out.append(f"route: edge {e[0]}-{e[1]} does not join its endpoints")
        segs = list(zip(r, r[1:]))
        if any(a == b for a, b in segs):
            out.append(f"route: edge {e[0]}-{e[1]} has a zero-length segment")
            continue
        for p, v in vertex_at.items():
            if v in e:
                continue
            if any(on_segment(p, a, b) for a, b in segs):
                out.append(f"edge through vertex: edge {e[0]}-{e[1]} passes through vertex {v}")
        for i, j in combinations(range(len(segs)), 2):
            hit = segment_contact(*segs[i], *segs[j])
            if hit is None:
                continue
            if j == i + 1 and hit[0] == "touch" and hit[1] == segs[i][1]:
                continue
            out.append(f"self-intersection: route of edge {e[0]}-{e[1]}")
            break
    if out:
        return out

    incidence = defaultdict(set)
    for e, f in combinations(g.edges, 2):
        shared = set(e) & set(f)
        for a, b in d.segments(e):
            for c, dd in d.segments(f):
                hit = segment_contact(a, b, c, dd)
                if hit is None:
                    continue
                if hit[0] == "overlap":
                    out.append(f"overlap: edges {e[0]}-{e[1]} and {f[0]}-{f[1]} share a segment")
                elif hit[0] == "touch":
                    p = hit[1]
                    if p in vertex_at and vertex_at[p] in shared:
                        continue
                    out.append(f"tangency: edges {e[0]}-{e[1]} and {f[0]}-{f[1]} touch without crossing")
                else:
                    p = hit[1]
                    if p in vertex_at:
                        out.append(f"crossing at vertex: {e[0]}-{e[1]} and {f[0]}-{f[1]}")
                    incidence[p] |= {e, f}
    for p, es in sorted(incidence.items()):
        if len(es) >= 3:
            names = ", ".join(f"{u}-{v}" for u, v in sorted(es))
            out.append(f"triple point: edges {names} meet at one point")
    return sorted(set(out), key=out.index)


# ---------------------------------------------------------------------------
# abstract crossing structure
# ---------------------------------------------------------------------------


def pair_key(e, f) -> tuple:
    return (e, f) if e <= f else (f, e)


def independent(e, f) -> bool:
    return not (set(e) & set(f))


@dataclass(frozen=True)
class AbstractDrawing:
    """A graph with a crossing multiset over unordered edge pairs.

    ``crossings`` maps ``pair_key(e, f)`` to a positive multiplicity.
    ``order`` optionally lists, per edge, the crossing pairs met along the
    route (a pair appears once per occurrence).
    """

    graph: Graph
    crossings: Mapping
    order: Mapping | None = None

    def __post_init__(self):
        edges = self.graph.edge_set
        clean = {}
        for (e, f), mult in self.crossings.items():
            e, f = edge_key(*e), edge_key(*f)
            if e == f:
                raise MalformedInput(f"edge {e} cannot cross itself")
            if e not in edges or f not in edges:
                raise MalformedInput(f"crossing {e},{f} references an unknown edge")
            if mult < 1:
                raise MalformedInput("crossing multiplicities must be positive")
            clean[pair_key(e, f)] = clean.get(pair_key(e, f), 0) + int(mult)
        object.__setattr__(self, "crossings", dict(sorted(clean.items())))
        if self.order is not None:
            for pair, mult in self.crossings.items():
                for e in pair:
                    if list(self.order.get(e, [])).count(pair) != mult:
                        raise MalformedInput(f"crossing order of {e} disagrees with multiplicity of {pair}")

    @property
    def occurrences(self) -> list[tuple]:
        """All crossing occurrences as (e, f, index), sorted."""
        return [(e, f, i) for (e, f), mult in self.crossings.items() for i in range(mult)]

    def partners(self, e) -> list:
        out = []
        for a, b in self.crossings:
            if a == e:
                out.append(b)
            elif b == e:
                out.append(a)
        return sorted(out)


def crossing_graph(a: AbstractDrawing) -> Graph:
    return Graph(a.graph.edges, tuple(a.crossings))


def independent_pairs(a: AbstractDrawing) -> list[tuple]:
    """D^x: crossing pairs whose edges share no endpoint, sorted."""
    return [p for p in a.crossings if independent(*p)]


def crossing_points(d: GeometricDrawing) -> list[tuple]:
    """Every proper crossing as (e, f, occurrence, point, pos_e, pos_f).

    ``pos_x`` is (segment index, parameter) along x's route, which sorts like
    arclength. Occurrences of a pair are numbered along the first edge.
    """
    violations = validate_drawing(d)
    if violations:
        raise InvalidDrawing(violations)
    out = []
    for e, f in combinations(d.graph.edges, 2):
        hits = []
        for i, (a, b) in enumerate(d.segments(e)):
            for j, (c, dd) in enumerate(d.segments(f)):
                hit = segment_contact(a, b, c, dd)
                if hit is not None and hit[0] == "proper":
                    hits.append(((i, hit[2]), (j, hit[3]), hit[1]))
        for occ, (pe, pf, p) in enumerate(sorted(hits)):
            out.append((e, f, occ, p, pe, pf))
    return out


def compute_crossings(d: GeometricDrawing) -> AbstractDrawing:
    counts = defaultdict(int)
    along = defaultdict(list)
    for e, f, _, _, pe, pf in crossing_points(d):
        counts[(e, f)] += 1
        along[e].append((pe, (e, f)))
        along[f].append((pf, (e, f)))
    order = {e: [pair for _, pair in sorted(along[e])] for e in d.graph.edges}
    return AbstractDrawing(d.graph, dict(counts), order)


def relabel_drawing(d: GeometricDrawing, mapping: Mapping) -> GeometricDrawing:
    g = d.graph.relabel(mapping)
    routes = {}
    for (u, v), r in d.routes.items():
        key = edge_key(mapping[u], mapping[v])
        routes[key] = r if key == (mapping[u], mapping[v]) else tuple(reversed(r))
    return GeometricDrawing(g, {mapping[v]: p for v, p in d.positions.items()}, routes)
