"""JSON encoding of graphs, drawings, certificates and witnesses.

Every document carries ``"schema": "bpl/1"``. Edges are written as
``"u-v"`` strings with u < v and rationals as ``[numerator, denominator]``.
Readers also accept plain integers and ``"p/q"`` strings for rationals.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .certificates import Bearing, CoverCertificate, GapCertificate, GapCoverCertificate
from .constructions import Planarization, ShallowModel, SubdivisionWitness
from .drawing import AbstractDrawing, GeometricDrawing, pair_key
from .errors import MalformedInput
from .graphcore import Graph, TreeDecomposition, edge_key

SCHEMA = "bpl/1"


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


def edge_str(e) -> str:
    u, v = edge_key(*e)
    return f"{u}-{v}"


def parse_edge(s) -> tuple:
    if isinstance(s, (list, tuple)) and len(s) == 2:
        return edge_key(int(s[0]), int(s[1]))
    try:
        u, v = str(s).split("-")
        return edge_key(int(u), int(v))
    except ValueError:
        raise MalformedInput(f"bad edge {s!r}; expected 'u-v'") from None


def rat(x) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def parse_rat(x) -> Fraction:
    try:
        if isinstance(x, (list, tuple)):
            return Fraction(int(x[0]), int(x[1]))
        if isinstance(x, float):
            raise ValueError
        return Fraction(x)
    except (ValueError, ZeroDivisionError, IndexError, TypeError):
        raise MalformedInput(f"bad rational {x!r}") from None


def _vertex(x) -> int:
    try:
        return int(x)
    except (TypeError, ValueError):
        raise MalformedInput(f"bad vertex id {x!r}") from None


def _check_schema(doc, kind: str | None = None):
    if not isinstance(doc, dict):
        raise MalformedInput("expected a JSON object")
    if doc.get("schema") != SCHEMA:
        raise MalformedInput(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA!r}")
    if kind is not None and doc.get("kind") != kind:
        raise MalformedInput(f"expected a {kind!r} document, got {doc.get('kind')!r}")


def _doc(kind: str, body: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **body}


# ---------------------------------------------------------------------------
# graphs and drawings
# ---------------------------------------------------------------------------


def graph_body(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [edge_str(e) for e in g.edges]}


def graph_from_body(body: dict) -> Graph:
    try:
        vertices = [_vertex(v) for v in body["vertices"]]
        edges = [parse_edge(e) for e in body["edges"]]
    except KeyError as exc:
        raise MalformedInput(f"graph is missing {exc.args[0]!r}") from None
    return Graph(tuple(vertices), tuple(edges))


def graph_to_json(g: Graph) -> dict:
    return _doc("graph", graph_body(g))


def graph_from_json(doc: dict) -> Graph:
    """Accepts a graph document or anything that embeds one under "graph"."""
    _check_schema(doc)
    if doc.get("kind") == "graph":
        return graph_from_body(doc)
    if "graph" in doc:
        return graph_from_body(doc["graph"])
    raise MalformedInput("document contains no graph")


def drawing_to_json(d: GeometricDrawing) -> dict:
    positions = {str(v): [rat(p[0]), rat(p[1])] for v, p in sorted(d.positions.items())}
    routes = {}
    for e in d.graph.edges:
        r = d.routes[e]
        if len(r) > 2:
            routes[edge_str(e)] = [[rat(p[0]), rat(p[1])] for p in r]
    return _doc("drawing", {"graph": graph_body(d.graph), "positions": positions, "routes": routes})


def _point(p):
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise MalformedInput(f"bad point {p!r}")
    return (parse_rat(p[0]), parse_rat(p[1]))


def drawing_from_json(doc: dict) -> GeometricDrawing:
    _check_schema(doc, "drawing")
    g = graph_from_body(doc["graph"])
    positions = {_vertex(v): _point(p) for v, p in doc.get("positions", {}).items()}
    routes = {parse_edge(e): tuple(_point(p) for p in r) for e, r in doc.get("routes", {}).items()}
    return GeometricDrawing(g, positions, routes)


def abstract_to_json(a: AbstractDrawing) -> dict:
    pairs = list(a.crossings)
    body = {"graph": graph_body(a.graph),
            "crossings": [[edge_str(e), edge_str(f), m] for (e, f), m in a.crossings.items()]}
    if a.order is not None:
        index = {p: i for i, p in enumerate(pairs)}
        body["order"] = {edge_str(e): [index[p] for p in a.order.get(e, [])] for e in a.graph.edges}
    return _doc("abstract-drawing", body)


def abstract_from_json(doc: dict) -> AbstractDrawing:
    _check_schema(doc, "abstract-drawing")
    g = graph_from_body(doc["graph"])
    crossings = {}
    pairs = []
    for item in doc.get("crossings", []):
        if len(item) != 3:
            raise MalformedInput(f"bad crossing entry {item!r}")
        p = pair_key(parse_edge(item[0]), parse_edge(item[1]))
        pairs.append(p)
        crossings[p] = crossings.get(p, 0) + int(item[2])
    order = None
    if "order" in doc:
        try:
            order = {parse_edge(e): [pairs[i] for i in seq] for e, seq in doc["order"].items()}
        except IndexError:
            raise MalformedInput("crossing order refers to a missing crossing") from None
    return AbstractDrawing(g, crossings, order)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def _covers_body(covers) -> dict:
    return {edge_str(e): sorted(c) for e, c in sorted(covers.items())}


def _covers_from(body) -> dict:
    return {parse_edge(e): frozenset(_vertex(x) for x in c) for e, c in body.items()}


def certificate_to_json(cert) -> dict:
    if isinstance(cert, GapCertificate):
        charges = [[edge_str(e), edge_str(f), i, edge_str(p)] for (e, f, i), p in sorted(cert.charge.items())]
        return _doc("gap-certificate", {"k": cert.k, "charges": charges})
    if isinstance(cert, CoverCertificate):
        return _doc("cover-certificate", {"k": cert.k, "covers": _covers_body(cert.covers)})
    if isinstance(cert, GapCoverCertificate):
        bearing = [[edge_str(e), edge_str(f)] for e, f in sorted(cert.bearing.pairs)]
        return _doc("gap-cover-certificate", {"k": cert.k, "optimal": cert.optimal,
                                              "bearing": bearing, "covers": _covers_body(cert.covers)})
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def certificate_from_json(doc: dict):
    _check_schema(doc)
    kind = doc.get("kind")
    try:
        if kind == "gap-certificate":
            charge = {}
            for e, f, i, p in doc["charges"]:
                charge[(parse_edge(e), parse_edge(f), int(i))] = parse_edge(p)
            return GapCertificate(charge, int(doc["k"]))
        if kind == "cover-certificate":
            return CoverCertificate(_covers_from(doc["covers"]), int(doc["k"]))
        if kind == "gap-cover-certificate":
            pairs = frozenset((parse_edge(e), parse_edge(f)) for e, f in doc["bearing"])
            return GapCoverCertificate(Bearing(pairs), _covers_from(doc["covers"]), int(doc["k"]),
                                       bool(doc.get("optimal", True)))
    except (KeyError, ValueError, TypeError) as exc:
        raise MalformedInput(f"malformed {kind}: {exc}") from None
    raise MalformedInput(f"unknown certificate kind {kind!r}")


# ---------------------------------------------------------------------------
# decompositions, models, witnesses
# ---------------------------------------------------------------------------


def td_to_json(td: TreeDecomposition) -> dict:
    return _doc("tree-decomposition", {
        "width": td.width,
        "tree": graph_body(td.tree),
        "bags": {str(x): sorted(b) for x, b in sorted(td.bags.items())},
    })


def td_from_json(doc: dict) -> TreeDecomposition:
    _check_schema(doc, "tree-decomposition")
    tree = graph_from_body(doc["tree"])
    bags = {_vertex(x): frozenset(_vertex(v) for v in b) for x, b in doc["bags"].items()}
    return TreeDecomposition(tree, bags)


def model_to_json(m: ShallowModel) -> dict:
    return _doc("shallow-model", {
        "r": m.r,
        "host": graph_body(m.host),
        "pattern": graph_body(m.pattern),
        "branch": {str(h): sorted(b) for h, b in sorted(m.branch.items())},
        "center": {str(h): c for h, c in sorted(m.center.items())},
        "edge_witness": {edge_str(e): edge_str(w) for e, w in sorted(m.edge_witness.items())},
    })


def model_from_json(doc: dict) -> ShallowModel:
    _check_schema(doc, "shallow-model")
    return ShallowModel(
        graph_from_body(doc["host"]),
        graph_from_body(doc["pattern"]),
        {_vertex(h): frozenset(_vertex(x) for x in b) for h, b in doc["branch"].items()},
        {_vertex(h): _vertex(c) for h, c in doc["center"].items()},
        int(doc["r"]),
        {parse_edge(e): parse_edge(w) for e, w in doc["edge_witness"].items()},
    )


def subdivision_to_json(w: SubdivisionWitness) -> dict:
    return _doc("subdivision-witness", {
        "c": w.c,
        "pattern": graph_body(w.pattern),
        "paths": {edge_str(e): list(p) for e, p in sorted(w.paths.items())},
    })


def subdivision_from_json(doc: dict) -> SubdivisionWitness:
    _check_schema(doc, "subdivision-witness")
    paths = {parse_edge(e): [_vertex(x) for x in p] for e, p in doc["paths"].items()}
    return SubdivisionWitness(graph_from_body(doc["pattern"]), paths, int(doc["c"]))


def planarization_to_json(p: Planarization) -> dict:
    return _doc("planarization", {
        "original": graph_body(p.original),
        "graph": graph_body(p.planar_graph),
        "dummies": {str(z): [edge_str(e), edge_str(f), occ, ta, tb]
                    for z, (e, f, occ, ta, tb) in sorted(p.dummy_of.items())},
        "chains": {edge_str(e): list(c) for e, c in sorted(p.chains.items())},
    })


def planarization_from_json(doc: dict) -> Planarization:
    _check_schema(doc, "planarization")
    original = graph_from_body(doc["original"])
    planar = graph_from_body(doc["graph"])
    dummy_of = {_vertex(z): (parse_edge(e), parse_edge(f), int(o), _vertex(ta), _vertex(tb))
                for z, (e, f, o, ta, tb) in doc["dummies"].items()}
    chains = {parse_edge(e): [_vertex(x) for x in c] for e, c in doc["chains"].items()}
    segment_of: dict = {}
    for e, chain in chains.items():
        for x, y in zip(chain, chain[1:]):
            segment_of.setdefault(edge_key(x, y), []).append(e)
    return Planarization(original, planar, dummy_of, chains, segment_of)


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def save(doc, path) -> None:
    Path(path).write_text(dumps(doc))
