"""Deterministic instance families.

Every family returns a :class:`GeometricDrawing` that passes
``validate_drawing``. Random families draw from ``random.Random(seed)``
(Mersenne Twister, stable across CPython versions for integer draws).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from ..drawing import GeometricDrawing, segment_contact, validate_drawing
from ..errors import MalformedInput
from ..graphcore import Graph, edge_key

K6_FIGURE1 = {0: (7, 9), 1: (5, 2), 2: (11, 2), 3: (4, 1), 4: (9, 3), 5: (7, 5)}


def _checked(d: GeometricDrawing) -> GeometricDrawing:
    bad = validate_drawing(d)
    if bad:
        raise AssertionError(f"generator produced an invalid drawing: {bad[:3]}")
    return d


def k6_figure1() -> GeometricDrawing:
    """Straight-line K6 with three pairwise disjoint crossings."""
    g = Graph.from_edges(combinations(range(6), 2), range(6))
    return _checked(GeometricDrawing(g, K6_FIGURE1))


def straightline_complete(n: int) -> GeometricDrawing:
    """K_n on points in convex position with no three diagonals concurrent.

    Points lie on the parabola y = x^2 at x = 0, 1, 3, 7, ... (gaps grow),
    which avoids the concurrent diagonals of evenly spaced layouts.
    """
    if n < 1:
        raise MalformedInput("straightline-complete needs n >= 1")
    g = Graph.from_edges(combinations(range(n), 2), range(n))
    xs = [(1 << i) - 1 for i in range(n)]
    return _checked(GeometricDrawing(g, {i: (x, x * x) for i, x in enumerate(xs)}))


def star_construction(n: int) -> GeometricDrawing:
    """n disjoint plane stars with n leaves each, plus a star T with n leaves
    whose every edge crosses every star edge.

    Star i has its root at (-L, y_i) and fans right to leaves (L, y_i + j);
    T's root sits below everything and its edges rise to leaves above the
    stars, staying within 0 <= x <= n < L.
    """
    if n < 1:
        raise MalformedInput("star-construction needs n >= 1")
    big = n + 1
    pos = {}
    edges = []
    vid = 0
    band = n + 1
    for i in range(n):
        root = vid
        pos[root] = (-big, i * band)
        vid += 1
        for j in range(1, n + 1):
            pos[vid] = (big, i * band + j)
            edges.append((root, vid))
            vid += 1
    t_root = vid
    pos[t_root] = (0, -1)
    vid += 1
    top = n * band + 1
    for j in range(1, n + 1):
        pos[vid] = (j, top)
        edges.append((t_root, vid))
        vid += 1
    g = Graph.from_edges(edges, pos)
    return _checked(GeometricDrawing(g, pos))


def star_parts(n: int) -> tuple[list, list, int]:
    """(S-edges, T-edges, root of T) of ``star_construction(n)``."""
    s_edges, t_edges = [], []
    t_root = n * (n + 1)
    d = star_construction(n)
    for e in d.graph.edges:
        (t_edges if t_root in e else s_edges).append(e)
    return s_edges, t_edges, t_root


def grid(a: int, b: int) -> GeometricDrawing:
    pos = {i * b + j: (i, j) for i in range(a) for j in range(b)}
    edges = [(i * b + j, i * b + j + 1) for i in range(a) for j in range(b - 1)]
    edges += [(i * b + j, (i + 1) * b + j) for i in range(a - 1) for j in range(b)]
    return _checked(GeometricDrawing(Graph.from_edges(edges, pos), pos))


def _random_points(rng: random.Random, n: int, span: int) -> dict:
    pts = set()
    out = {}
    while len(out) < n:
        p = (rng.randint(0, span), rng.randint(0, span))
        if p not in pts:
            pts.add(p)
            out[len(out)] = p
    return out


def random_segments(n: int, m: int, seed: int, bend_prob: float = 0.5,
                    span: int | None = None, attempts: int = 200) -> GeometricDrawing:
    """n random points, m random edges, some routed with one bend.

    Bent edges may cross another edge twice and adjacent edges may cross.
    Resamples until the drawing is in general position.
    """
    rng = random.Random(seed)
    span = span or 4 * n + 8
    m = min(m, n * (n - 1) // 2)
    for _ in range(attempts):
        pos = _random_points(rng, n, span)
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        chosen = sorted(edge_key(*p) for p in pairs[:m])
        routes = {}
        for e in chosen:
            if rng.random() < bend_prob:
                bend = (rng.randint(-span // 2, span + span // 2),
                        rng.randint(-span // 2, span + span // 2))
                routes[e] = (pos[e[0]], bend, pos[e[1]])
        d = GeometricDrawing(Graph.from_edges(chosen, range(n)), pos, routes)
        if not validate_drawing(d):
            return d
    raise AssertionError("random_segments: no valid drawing found")


def random_planar_plus_chords(n: int, extra: int, seed: int, attempts: int = 200) -> GeometricDrawing:
    """A random maximal plane straight-line graph plus ``extra`` crossing chords."""
    rng = random.Random(seed)
    span = 6 * n + 10
    for _ in range(attempts):
        pos = _random_points(rng, n, span)
        pts = {v: (Fraction(x), Fraction(y)) for v, (x, y) in pos.items()}
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        plane, rest = [], []
        for u, v in pairs:
            clean = True
            for a, b in plane:
                if {u, v} & {a, b}:
                    continue
                if segment_contact(pts[u], pts[v], pts[a], pts[b]) is not None:
                    clean = False
                    break
            (plane if clean else rest).append((u, v))
        chords = rest[:extra]
        d = GeometricDrawing(Graph.from_edges(plane + chords, range(n)), pos)
        if not validate_drawing(d):
            return d
    raise AssertionError("random_planar_plus_chords: no valid drawing found")


def subdivided(base: GeometricDrawing, c: int) -> tuple[GeometricDrawing, dict]:
    """Subdivide every edge with exactly c new vertices on its first segment.

    Returns the drawing and, per base edge, the vertex path replacing it.
    """
    if c < 0:
        raise MalformedInput("subdivision count must be >= 0")
    for shift in range(1, 50):
        nxt = max(base.graph.vertices, default=-1) + 1
        pos = dict(base.positions)
        routes = {}
        edges = []
        paths = {}
        for e in base.graph.edges:
            r = base.routes[e]
            a, b = r[0], r[1]
            path = [e[0]]
            prev = a
            for j in range(1, c + 1):
                t = Fraction(j, c + 1 + shift)
                p = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                pos[nxt] = p
                edges.append((path[-1], nxt))
                routes[edge_key(path[-1], nxt)] = (pos[path[-1]], p) if path[-1] < nxt else (p, pos[path[-1]])
                path.append(nxt)
                prev = p
                nxt += 1
            tail = (prev,) + tuple(r[1:])
            edges.append((path[-1], e[1]))
            key = edge_key(path[-1], e[1])
            routes[key] = tail if key == (path[-1], e[1]) else tuple(reversed(tail))
            path.append(e[1])
            paths[e] = path
        d = GeometricDrawing(Graph.from_edges(edges, pos), pos, routes)
        if not validate_drawing(d):
            return d, paths
    raise AssertionError("subdivided: could not place subdivision vertices")


FAMILIES = {
    "straightline-complete": lambda p: straightline_complete(p["n"]),
    "star-construction": lambda p: star_construction(p["n"]),
    "random-segments": lambda p: random_segments(p["n"], p["m"], p["seed"], p.get("bend_prob", 0.5)),
    "k6-figure1": lambda p: k6_figure1(),
    "grid": lambda p: grid(p["a"], p["b"]),
    "random-planar-plus-chords": lambda p: random_planar_plus_chords(p["n"], p["extra"], p["seed"]),
    "subdivided": lambda p: subdivided(generate(p["base"]["family"], p["base"].get("params", {})), p["c"])[0],
}


def generate(family: str, params: dict | None = None) -> GeometricDrawing:
    params = dict(params or {})
    if family not in FAMILIES:
        raise MalformedInput(f"unknown family {family!r}; known: {sorted(FAMILIES)}")
    try:
        return FAMILIES[family](params)
    except KeyError as exc:
        raise MalformedInput(f"family {family!r} is missing parameter {exc.args[0]!r}") from None


def corpus() -> list[tuple[str, GeometricDrawing]]:
    """The fixed desk-scale corpus used by the bound checks."""
    out = [("k6-figure1", k6_figure1())]
    out += [(f"star-{n}", star_construction(n)) for n in (3, 4, 5)]
    out += [(f"complete-{n}", straightline_complete(n)) for n in range(3, 9)]
    out += [(f"grid-{a}x{b}", grid(a, b)) for a, b in ((2, 3), (3, 3), (2, 5), (3, 4))]
    out += [(f"segments-{n}-{m}-s{s}", random_segments(n, m, s))
            for n, m in ((7, 10), (8, 13), (9, 14), (10, 16)) for s in range(3)]
    out += [(f"chords-{n}-{x}-s{s}", random_planar_plus_chords(n, x, s))
            for n, x in ((8, 3), (9, 5), (10, 4)) for s in range(2)]
    out += [(f"subdivided-k6-c{c}", subdivided(k6_figure1(), c)[0]) for c in (1, 2)]
    return out
