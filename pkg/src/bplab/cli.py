"""Command-line interface: ``bpl <subcommand> [options]``.

Exit codes: 0 success, 1 a bound or certificate failed, 2 malformed input,
3 a size cap was exceeded (always for direct exact solvers, and for
``bounds``/``pipeline`` only under ``--strict``).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .coloring import ACYCLIC_CAP, SCOL_CAP, acyclic_chromatic_exact, check_acn, scol_exact, scol_greedy
from .constructions import (contract_subdivision, lift_tree_decomposition, minor_drawing,
                            planarize, sparsify)
from .drawing import AbstractDrawing, compute_crossings, validate_drawing
from .errors import BplError, InstanceTooLarge, MalformedInput
from .expansion import EXPANSION_CAP, nabla, topo_nabla
from .graphcore import TREEWIDTH_CAP, treewidth_exact
from .harness import bounds as bounds_mod
from .harness.generators import FAMILIES, generate
from .harness.pipeline import DEFAULT_SPEC, run_pipeline, summarize
from .harness.report import BoundConfig, strict_check, verify_bounds
from .numbers import GAP_COVER_EXACT_CAP, cover_number, gap_cover_number, gap_number
from .verify import verify_cover, verify_gap, verify_gap_cover


class _Failed(Exception):
    """A check ran and came out negative (exit status 1)."""


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _abstract(path) -> AbstractDrawing:
    """Load a drawing or abstract drawing and return its crossing structure."""
    doc = jsonio.load(path)
    jsonio._check_schema(doc)
    if doc.get("kind") == "abstract-drawing":
        return jsonio.abstract_from_json(doc)
    return compute_crossings(jsonio.drawing_from_json(doc))


def _emit(args, doc: dict, text: str | None = None):
    if args.format == "text" and text is not None:
        out = text if text.endswith("\n") else text + "\n"
    else:
        out = jsonio.dumps({"schema": jsonio.SCHEMA, **doc} if "schema" not in doc else doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _parse_params(items) -> dict:
    params = {}
    for item in items or []:
        if "=" not in item:
            raise MalformedInput(f"parameter {item!r} must look like key=value")
        key, value = item.split("=", 1)
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    d = jsonio.drawing_from_json(jsonio.load(args.input))
    violations = validate_drawing(d)
    text = "valid" if not violations else "\n".join(violations)
    _emit(args, {"kind": "validation", "valid": not violations, "violations": violations}, text)
    if violations:
        raise MalformedInput(f"{len(violations)} violation(s)")


def cmd_crossings(args):
    a = _abstract(args.input)
    doc = jsonio.abstract_to_json(a)
    text = "\n".join(f"{e[0]}-{e[1]} x {f[0]}-{f[1]}: {m}" for (e, f), m in a.crossings.items()) or "no crossings"
    _emit(args, doc, text)


def _solve(args, kind: str):
    a = _abstract(args.input)
    verifier = {"gap": verify_gap, "cover": verify_cover, "gap-cover": verify_gap_cover}[kind]
    if args.certificate:
        cert = jsonio.certificate_from_json(jsonio.load(args.certificate))
        ok = verifier(a, cert)
        _emit(args, {"kind": "verification", "verifier": verifier.__name__, "verified": ok, "k": cert.k},
              f"{verifier.__name__}: {'accepted' if ok else 'rejected'} (k={cert.k})")
        if not ok:
            raise _Failed(f"{verifier.__name__} rejected the certificate")
        return
    if kind == "gap":
        k, cert = gap_number(a)
    elif kind == "cover":
        k, cert = cover_number(a)
    else:
        k, cert = gap_cover_number(a, budget=args.budget, cap=args.cap_gap_cover)
        if not cert.optimal and args.strict:
            raise InstanceTooLarge(f"gap-cover: exact search not completed, upper bound {k}")
    assert verifier(a, cert)
    _emit(args, {"kind": f"{kind}-number", "k": k, "certificate": jsonio.certificate_to_json(cert)},
          f"{kind} number: {k}")


def cmd_minor_drawing(args):
    a = _abstract(args.input)
    cert = jsonio.certificate_from_json(jsonio.load(args.certificate))
    model = jsonio.model_from_json(jsonio.load(args.model))
    a_h, cert_h = minor_drawing(a, cert, model)
    ok = verify_gap_cover(a_h, cert_h)
    _emit(args, {"kind": "minor-drawing", "drawing": jsonio.abstract_to_json(a_h),
                 "certificate": jsonio.certificate_to_json(cert_h), "verified": ok,
                 "limit": (2 * model.r + 1) * cert.k},
          f"minor drawing: k'={cert_h.k} <= {(2 * model.r + 1) * cert.k}, verified={ok}")
    if not ok:
        raise _Failed("verify_gap_cover rejected the lifted certificate")


def cmd_contract(args):
    a = _abstract(args.input)
    cert = jsonio.certificate_from_json(jsonio.load(args.certificate))
    w = jsonio.subdivision_from_json(jsonio.load(args.witness))
    a_h, cert_h = contract_subdivision(a, cert, w)
    ok = verify_gap(a_h, cert_h)
    _emit(args, {"kind": "contraction", "drawing": jsonio.abstract_to_json(a_h),
                 "certificate": jsonio.certificate_to_json(cert_h), "verified": ok,
                 "limit": (w.c + 1) * cert.k},
          f"contraction: k'={cert_h.k} <= {(w.c + 1) * cert.k}, verified={ok}")
    if not ok:
        raise _Failed("verify_gap rejected the contracted certificate")


def cmd_sparsify(args):
    a = _abstract(args.input)
    if args.certificate:
        cert = jsonio.certificate_from_json(jsonio.load(args.certificate))
    else:
        _, cert = gap_cover_number(a)
    h, trace = sparsify(a, cert, args.seed)
    _emit(args, {"kind": "sparsified", "graph": jsonio.graph_body(h), "trace": trace},
          f"kept {h.n} vertices and {h.m} edges (p={trace['p']}, seed={args.seed})")


def cmd_planarize(args):
    d = jsonio.drawing_from_json(jsonio.load(args.input))
    p = planarize(d)
    _emit(args, jsonio.planarization_to_json(p),
          f"planarization: {p.planar_graph.n} vertices, {len(p.dummy_of)} dummies")


def cmd_lift_td(args):
    p = jsonio.planarization_from_json(jsonio.load(args.input))
    if args.td:
        td_prime = jsonio.td_from_json(jsonio.load(args.td))
    else:
        _, td_prime = treewidth_exact(p.planar_graph, args.cap_treewidth)
    td = lift_tree_decomposition(p, td_prime)
    _emit(args, jsonio.td_to_json(td),
          f"lifted width {td.width} from width {td_prime.width}, limit {2 * (td_prime.width + 1) - 1}")


def _graph(path):
    return jsonio.graph_from_json(jsonio.load(path))


def cmd_expansion(args):
    g = _graph(args.graph)
    if args.mode == "minor":
        rho, m = nabla(g, args.r, args.cap_expansion)
        doc = {"kind": "expansion", "mode": "minor", "r": args.r, "value": jsonio.rat(rho),
               "model": jsonio.model_to_json(m)}
    else:
        rho, w = topo_nabla(g, args.r, args.cap_expansion)
        doc = {"kind": "expansion", "mode": "topo", "r": args.r, "value": jsonio.rat(rho),
               "witness": jsonio.subdivision_to_json(w)}
    _emit(args, doc, f"{args.mode} nabla_{args.r} = {rho}")


def cmd_coloring(args):
    g = _graph(args.graph)
    if args.mode == "scol-exact":
        value, order = scol_exact(g, args.r, args.cap_scol)
        doc = {"value": value, "order": order.sequence}
    elif args.mode == "scol-greedy":
        value, order = scol_greedy(g, args.r)
        doc = {"value": value, "order": order.sequence}
    elif args.mode == "acyclic":
        value, coloring = acyclic_chromatic_exact(g, args.cap_acyclic)
        doc = {"value": value, "coloring": {str(v): c for v, c in sorted(coloring.items())}}
    else:
        rep = check_acn(g, args.cap_scol, args.cap_acyclic)
        value = f"{rep.chi_a} <= {rep.scol2}"
        doc = {"chi_a": rep.chi_a, "scol2": rep.scol2, "holds": rep.holds,
               "order": rep.order.sequence,
               "coloring": {str(v): c for v, c in sorted(rep.coloring.items())}}
    _emit(args, {"kind": "coloring", "mode": args.mode, "r": args.r, **doc}, f"{args.mode}: {value}")


def cmd_bounds(args):
    if args.input:
        cfg = BoundConfig(radii=tuple(args.radii), genus=args.genus, cap_treewidth=args.cap_treewidth,
                          cap_expansion=args.cap_expansion, cap_scol=args.cap_scol,
                          cap_acyclic=args.cap_acyclic)
        rep = verify_bounds(_abstract(args.input), cfg, args.input)
        if args.strict:
            strict_check(rep)
        lines = [f"{e['bound']}: {e['left']} <= {e['right']} {'ok' if e['holds'] else 'VIOLATED'}"
                 for e in rep.entries]
        lines += [f"skipped {s['quantity']}: {s['reason']}" for s in rep.skipped]
        _emit(args, {"kind": "bound-report", **rep.to_json()}, "\n".join(lines))
        if not rep.holds:
            raise _Failed("; ".join(rep.failures()))
        return
    values = bounds_mod.closed_form_bounds(k=args.k, r=args.r, g=args.genus, n=args.n)
    doc = {"kind": "closed-form-bounds", "params": {"k": args.k, "r": args.r, "g": args.genus, "n": args.n},
           "d_k": jsonio.rat(bounds_mod.d_k(args.k)),
           "bounds": {name: {"value": jsonio.rat(b.value), "rounding": b.rounding,
                             "anchor": bounds_mod.BOUND_INFO[name][0]}
                      for name, b in sorted(values.items())},
           "not_checkable": bounds_mod.NOT_CHECKABLE}
    text = "\n".join(f"{name}: {b.value} ({b.rounding}, ~{float(b.value):.6f})"
                     for name, b in sorted(values.items()))
    _emit(args, doc, text)


def cmd_generate(args):
    d = generate(args.family, _parse_params(args.param))
    _emit(args, jsonio.drawing_to_json(d), f"{args.family}: {d.graph.n} vertices, {d.graph.m} edges")


def cmd_pipeline(args):
    spec = args.spec or DEFAULT_SPEC
    bundle = run_pipeline(spec, jobs=args.jobs)
    if args.strict:
        for inst in bundle["instances"]:
            caps = [s for s in inst.get("report", {}).get("skipped", []) if "cap" in s["reason"]]
            if caps:
                raise InstanceTooLarge(f"{inst['id']}: {caps[0]['quantity']}: {caps[0]['reason']}")
    _emit(args, bundle, summarize(bundle))
    if args.summary:
        with open(args.summary, "w") as fh:
            fh.write(summarize(bundle))
    if not bundle["ok"]:
        raise _Failed("; ".join(bundle["summary"]["failures"]))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _caps(p, *which):
    if "treewidth" in which:
        p.add_argument("--cap-treewidth", type=int, default=TREEWIDTH_CAP)
    if "expansion" in which:
        p.add_argument("--cap-expansion", type=int, default=EXPANSION_CAP)
    if "scol" in which:
        p.add_argument("--cap-scol", type=int, default=SCOL_CAP)
    if "acyclic" in which:
        p.add_argument("--cap-acyclic", type=int, default=ACYCLIC_CAP)
    if "gap-cover" in which:
        p.add_argument("--cap-gap-cover", type=int, default=GAP_COVER_EXACT_CAP,
                       help="max independent crossing pairs for the exact search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpl", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--strict", action="store_true", help="treat cap overruns as errors (exit 3)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, inp=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if inp:
            p.add_argument("--input", "-i", required=True, help="drawing JSON")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a geometric drawing for general position")
    add("crossings", cmd_crossings, "compute the crossing multiset of a drawing")
    for name in ("gap", "cover", "gap-cover"):
        p = add(name, lambda a, n=name: _solve(a, n), f"compute the {name} number with a certificate")
        p.add_argument("--certificate", help="verify this certificate instead of solving")
        if name == "gap-cover":
            p.add_argument("--budget", type=int)
            _caps(p, "gap-cover")
    p = add("minor-drawing", cmd_minor_drawing, "drawing of a shallow minor with a lifted certificate")
    p.add_argument("--certificate", required=True)
    p.add_argument("--model", required=True)
    p = add("contract", cmd_contract, "contract a subdivision, carrying the gap certificate")
    p.add_argument("--certificate", required=True)
    p.add_argument("--witness", required=True)
    p = add("sparsify", cmd_sparsify, "random subgraph with no independent crossings")
    p.add_argument("--certificate")
    p.add_argument("--seed", type=int, default=0)
    add("planarize", cmd_planarize, "replace crossings by dummy vertices")
    p = add("lift-td", cmd_lift_td, "lift a tree decomposition of a planarization")
    p.add_argument("--td", help="tree decomposition of the planarization (default: exact)")
    _caps(p, "treewidth")
    p = add("expansion", cmd_expansion, "exact r-shallow (topological) minor density", inp=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--mode", choices=("minor", "topo"), default="minor")
    _caps(p, "expansion")
    p = add("coloring", cmd_coloring, "strong colouring numbers and acyclic colourings", inp=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--mode", choices=("scol-exact", "scol-greedy", "acyclic", "acn"), default="scol-exact")
    _caps(p, "scol", "acyclic")
    p = add("bounds", cmd_bounds, "closed-form bounds, or a full bound report for --input", inp=False)
    p.add_argument("--input", "-i", help="drawing to measure")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--genus", "--g", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--radii", type=int, nargs="+", default=[0, 1, 2])
    _caps(p, "treewidth", "expansion", "scol", "acyclic")
    p = add("generate", cmd_generate, "generate a drawing from a family", inp=False)
    p.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p.add_argument("--param", "-p", action="append", help="key=value (value parsed as JSON)")
    p = add("pipeline", cmd_pipeline, "run a pipeline spec (default: the shipped one)", inp=False)
    p.add_argument("--spec", help="pipeline spec JSON")
    p.add_argument("--summary", help="also write the text summary here")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _Failed as exc:
        print(f"bpl: {exc}", file=sys.stderr)
        return 1
    except BplError as exc:
        print(f"bpl: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
