"""Generation, analysis, construction replays and bound checks from a spec file.

A spec is a JSON document::

    {"schema": "bpl/1", "kind": "pipeline-spec",
     "config": {"radii": [0, 1, 2], "sparsify_seeds": 20, "contract_c": [1, 2]},
     "instances": [{"id": "k6", "family": "k6-figure1", "params": {},
                    "seeds": [1, 2], "checks": ["bounds", "sparsify"]}],
     "certificates": [{"instance": "k6", "certificate": {...}}]}

``seeds`` expands one entry into several instances with ``params["seed"]``
set. Every random choice is derived from the instance id, so the bundle is
a pure function of the spec.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .. import jsonio
from ..constructions import (contract_subdivision, lift_tree_decomposition, minor_drawing,
                             planarize, sparsify)
from ..drawing import compute_crossings
from ..errors import BplError, MalformedInput
from ..graphcore import treewidth_exact, validate_tree_decomposition
from ..numbers import gap_cover_number, gap_number
from ..verify import verify_cover, verify_gap, verify_gap_cover
from .generators import generate
from .instances import random_shallow_model, random_subdivision_witness
from .report import BoundConfig, verify_bounds

ALL_CHECKS = ("bounds", "minor-drawing", "contract", "sparsify", "planarize-lift")
DEFAULT_SPEC = Path(__file__).with_name("default_spec.json")


def seed_for(instance_id: str, tag: str) -> int:
    return zlib.crc32(f"{instance_id}/{tag}".encode())


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------


def parse_spec(doc: dict, where: str = "spec") -> tuple[dict, list[dict], list[dict]]:
    """(config, expanded instances, certificate fixtures) with located errors."""
    if not isinstance(doc, dict) or doc.get("schema") != jsonio.SCHEMA:
        raise MalformedInput(f"{where}: expected a document with \"schema\": \"{jsonio.SCHEMA}\"")
    config = dict(doc.get("config", {}))
    instances = []
    for i, item in enumerate(doc.get("instances", [])):
        at = f"{where}: instances[{i}]"
        if not isinstance(item, dict) or "family" not in item:
            raise MalformedInput(f"{at}: missing 'family'")
        checks = list(item.get("checks", ALL_CHECKS))
        unknown = sorted(set(checks) - set(ALL_CHECKS))
        if unknown:
            raise MalformedInput(f"{at}: unknown checks {unknown}")
        base_id = str(item.get("id", item["family"]))
        params = dict(item.get("params", {}))
        seeds = item.get("seeds")
        if seeds is None:
            instances.append({"id": base_id, "family": item["family"], "params": params, "checks": checks})
        else:
            for s in seeds:
                instances.append({"id": f"{base_id}-s{s}", "family": item["family"],
                                  "params": {**params, "seed": int(s)}, "checks": checks})
    ids = [x["id"] for x in instances]
    dupes = sorted({x for x in ids if ids.count(x) > 1})
    if dupes:
        raise MalformedInput(f"{where}: duplicate instance ids {dupes}")
    fixtures = []
    for i, item in enumerate(doc.get("certificates", [])):
        at = f"{where}: certificates[{i}]"
        if not isinstance(item, dict) or "instance" not in item or "certificate" not in item:
            raise MalformedInput(f"{at}: needs 'instance' and 'certificate'")
        if item["instance"] not in ids:
            raise MalformedInput(f"{at}: unknown instance {item['instance']!r}")
        fixtures.append(item)
    return config, instances, fixtures


# ---------------------------------------------------------------------------
# per-instance work
# ---------------------------------------------------------------------------


def _replay_minor(iid, a, radii) -> list[dict]:
    k, cert = gap_cover_number(a)
    out = []
    for r in radii:
        m = random_shallow_model(a.graph, r, seed_for(iid, f"model{r}"))
        a_h, cert_h = minor_drawing(a, cert, m)
        ok = verify_gap_cover(a_h, cert_h)
        out.append({"r": r, "pattern_n": m.pattern.n, "pattern_m": m.pattern.m, "k_in": k,
                    "k_out": cert_h.k, "limit": (2 * r + 1) * k,
                    "verified": ok and cert_h.k <= (2 * r + 1) * k})
    return out


def _replay_contract(iid, a, cs) -> list[dict]:
    k, cert = gap_number(a)
    out = []
    for c in cs:
        w = random_subdivision_witness(a.graph, c, seed_for(iid, f"subdiv{c}"))
        a_h, cert_h = contract_subdivision(a, cert, w)
        ok = verify_gap(a_h, cert_h)
        out.append({"c": c, "pattern_n": w.pattern.n, "pattern_m": w.pattern.m, "k_in": k,
                    "k_out": cert_h.k, "limit": (c + 1) * k, "verified": ok and cert_h.k <= (c + 1) * k})
    return out


def _replay_sparsify(iid, a, count: int) -> dict:
    k, cert = gap_cover_number(a)
    sizes = []
    ok = True
    for s in range(count):
        h, _ = sparsify(a, cert, seed_for(iid, f"sparsify{s}"))
        sizes.append(h.n)
        ok = ok and h.m <= 3 * h.n
    return {"k": k, "runs": count, "kept_vertices": sizes, "verified": ok}


def _replay_planarize(d, cap: int) -> dict:
    p = planarize(d)
    if p.planar_graph.n > cap:
        return {"skipped": f"planarization has {p.planar_graph.n} vertices, cap {cap}"}
    w_prime, td_prime = treewidth_exact(p.planar_graph, cap)
    td = lift_tree_decomposition(p, td_prime)
    bad = validate_tree_decomposition(p.original, td)
    limit = 2 * (w_prime + 1) - 1
    return {"planar_n": p.planar_graph.n, "tw_planarization": w_prime, "lifted_width": td.width,
            "limit": limit, "verified": not bad and td.width <= limit, "violations": bad}


def run_instance(inst: dict, config: dict) -> dict:
    iid = inst["id"]
    out = {"id": iid, "family": inst["family"], "params": inst["params"], "failures": []}
    try:
        d = generate(inst["family"], inst["params"])
    except BplError as exc:
        raise MalformedInput(f"instance {iid}: {exc}") from None
    a = compute_crossings(d)
    cfg = BoundConfig.from_dict(config)
    checks = inst["checks"]
    steps = {
        "minor-drawing": lambda: _replay_minor(iid, a, [r for r in cfg.radii if r <= 2]),
        "contract": lambda: _replay_contract(iid, a, config.get("contract_c", [1, 2])),
        "sparsify": lambda: _replay_sparsify(iid, a, int(config.get("sparsify_seeds", 20))),
        "planarize-lift": lambda: _replay_planarize(d, cfg.cap_treewidth),
    }
    constructions = {}
    for name in ALL_CHECKS[1:]:
        if name not in checks:
            continue
        try:
            result = steps[name]()
        except AssertionError as exc:
            result = {"verified": False, "error": f"assertion: {exc}"}
        constructions[name] = result
        rows = result if isinstance(result, list) else [result]
        for row in rows:
            if row.get("verified") is False:
                out["failures"].append(f"{name} failed on {iid}")
    out["constructions"] = constructions
    if "bounds" in checks:
        rep = verify_bounds(a, cfg, iid)
        out["report"] = rep.to_json()
        out["failures"] += [f"{iid}: {f}" for f in rep.failures()]
    out["ok"] = not out["failures"]
    return out


def check_fixture(item: dict) -> dict:
    inst = item["_instance"]
    a = compute_crossings(generate(inst["family"], inst["params"]))
    cert_doc = item["certificate"]
    kind = cert_doc.get("kind") if isinstance(cert_doc, dict) else None
    verifier = {"gap-certificate": "verify_gap", "cover-certificate": "verify_cover",
                "gap-cover-certificate": "verify_gap_cover"}.get(kind, "certificate parser")
    try:
        cert = jsonio.certificate_from_json(cert_doc)
        fn = {"verify_gap": verify_gap, "verify_cover": verify_cover,
              "verify_gap_cover": verify_gap_cover}[verifier]
        ok = fn(a, cert)
        error = None
    except MalformedInput as exc:
        ok, error = False, str(exc)
    row = {"instance": inst["id"], "kind": kind, "verifier": verifier, "verified": ok}
    if error:
        row["error"] = error
    return row


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def run_pipeline(spec, jobs: int = 1) -> dict:
    """Run a spec (path or parsed document) and return the report bundle."""
    if isinstance(spec, (str, Path)):
        where = str(spec)
        doc = jsonio.load(spec)
    else:
        where, doc = "spec", spec
    config, instances, fixtures = parse_spec(doc, where)
    if jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_instance, instances, [config] * len(instances)))
    else:
        results = [run_instance(inst, config) for inst in instances]
    results.sort(key=lambda r: r["id"])
    by_id = {x["id"]: x for x in instances}
    cert_rows = []
    for item in fixtures:
        cert_rows.append(check_fixture({**item, "_instance": by_id[item["instance"]]}))
    failures = [f for r in results for f in r["failures"]]
    failures += [f"{c['verifier']} rejected the {c['kind']} certificate for {c['instance']}"
                 for c in cert_rows if not c["verified"]]
    entries = sum(len(r.get("report", {}).get("entries", [])) for r in results)
    return {
        "schema": jsonio.SCHEMA,
        "kind": "pipeline-report",
        "instances": results,
        "certificate_checks": cert_rows,
        "summary": {"instances": len(results), "bound_entries": entries, "failures": failures},
        "ok": not failures,
    }


def summarize(bundle: dict) -> str:
    lines = []
    for r in bundle["instances"]:
        rep = r.get("report", {})
        n_entries = len(rep.get("entries", []))
        n_hold = sum(e["holds"] for e in rep.get("entries", []))
        cons = ", ".join(sorted(r.get("constructions", {})))
        m = rep.get("measured", {})
        lines.append(f"{r['id']}: n={m.get('n', '-')} k_gap={m.get('k_gap', '-')} "
                     f"k_gapcover={m.get('k_gapcover', '-')} bounds {n_hold}/{n_entries} hold; "
                     f"replayed [{cons}] {'ok' if r['ok'] else 'FAILED'}")
    for c in bundle["certificate_checks"]:
        lines.append(f"certificate {c['kind']} for {c['instance']}: "
                     f"{c['verifier']} {'accepted' if c['verified'] else 'REJECTED'}")
    for f in bundle["summary"]["failures"]:
        lines.append(f"FAILURE: {f}")
    lines.append("all checks passed" if bundle["ok"] else "pipeline FAILED")
    return "\n".join(lines) + "\n"
