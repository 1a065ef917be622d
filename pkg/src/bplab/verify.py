"""Independent certificate checkers.

These read the crossing multiset directly and recount everything; they do
not call into the solvers.
"""

from __future__ import annotations

from collections import Counter

from .certificates import CoverCertificate, GapCertificate, GapCoverCertificate
from .drawing import AbstractDrawing
from .errors import MalformedCertificate


def _edge_set(a: AbstractDrawing) -> set:
    return set(a.graph.edges)


def _check_edge(a_edges, e, what):
    if tuple(e) not in a_edges:
        raise MalformedCertificate(f"{what}: unknown edge {e}")


def _check_covers(a: AbstractDrawing, covers):
    a_edges = _edge_set(a)
    verts = set(a.graph.vertices)
    for e, cover in covers.items():
        _check_edge(a_edges, e, "cover")
        for x in cover:
            if x not in verts:
                raise MalformedCertificate(f"cover of {e}: unknown vertex {x}")


def verify_gap(a: AbstractDrawing, cert: GapCertificate) -> bool:
    a_edges = _edge_set(a)
    wanted = set()
    for (e, f), mult in a.crossings.items():
        for i in range(mult):
            wanted.add((e, f, i))
    for key, paid in cert.charge.items():
        if len(key) != 3:
            raise MalformedCertificate(f"charge key {key} is not (e, f, occurrence)")
        e, f, _ = key
        _check_edge(a_edges, e, "charge")
        _check_edge(a_edges, f, "charge")
        _check_edge(a_edges, paid, "charge")
    if set(cert.charge) != wanted:
        return False
    load = Counter()
    for (e, f, _), paid in cert.charge.items():
        if paid != e and paid != f:
            return False
        load[paid] += 1
    return all(c <= cert.k for c in load.values())


def _hits(cover, f) -> bool:
    return f[0] in cover or f[1] in cover


def verify_cover(a: AbstractDrawing, cert: CoverCertificate) -> bool:
    _check_covers(a, cert.covers)
    covers = {e: set(c) for e, c in cert.covers.items()}
    for e in a.graph.edges:
        c = covers.get(e, set())
        if len(c) > cert.k or e[0] in c or e[1] in c:
            return False
    for (e, f) in a.crossings:
        if set(e) & set(f):
            continue
        if not _hits(covers.get(e, set()), f) or not _hits(covers.get(f, set()), e):
            return False
    return True


def verify_gap_cover(a: AbstractDrawing, cert: GapCoverCertificate) -> bool:
    _check_covers(a, cert.covers)
    a_edges = _edge_set(a)
    for e, f in cert.bearing.pairs:
        _check_edge(a_edges, e, "bearing")
        _check_edge(a_edges, f, "bearing")
    covers = {e: set(c) for e, c in cert.covers.items()}
    for e in a.graph.edges:
        c = covers.get(e, set())
        if len(c) > cert.k or e[0] in c or e[1] in c:
            return False
    indep = {frozenset((e, f)) for (e, f) in a.crossings if not (set(e) & set(f))}
    for e, f in cert.bearing.pairs:
        if frozenset((e, f)) not in indep:
            return False
        if not _hits(covers.get(e, set()), f):
            return False
    for pair in indep:
        e, f = tuple(pair)
        if (e, f) not in cert.bearing.pairs and (f, e) not in cert.bearing.pairs:
            return False
    return True
