"""Command-line front end.

Every subcommand takes an explicit --seed (default 0) and emits
machine-readable output (JSON by default); the report-style commands can
also write CSV and render matplotlib figures alongside via --plot.

f coefficients are passed little-endian: --f 1,1,0,1 means 1 + x + x^3.
Exit codes: 0 success, 1 computational failure, 2 usage error.
"""

import argparse
import json
import sys

from . import SCHEMA
from .algebra import FieldCtx, UniPoly
from .curve import HyperellipticCurve, count_points_naive
from .errors import HyperzetaError
from .geomres import (BiHomSystem, GeometricResolution, bezout_bound,
                      verify_resolution)
from .report import (degree_table_csv, degree_table_json,
                     render_degree_figure, render_torsion_figure,
                     render_zeta_figure)
from .torsion import (NonGenericityTuple, chi_mod_ell, enumerate_tuples,
                      semi_reduce, solve_torsion_via_systems)
from .zeta import naive_zeta, schoof_pila, weil_verify
from .divpoly import degree_table


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _curve_from_args(args):
    modulus = _ints(args.modulus) if getattr(args, "modulus", None) else None
    ctx = FieldCtx(args.p, getattr(args, "k", 1) or 1, modulus)
    coeffs = _ints(args.f)
    return HyperellipticCurve(ctx, UniPoly.from_ints(ctx, coeffs))


def _emit(args, payload):
    if getattr(args, "format", "json") == "json":
        out = json.dumps(payload, indent=2, sort_keys=True)
    else:
        out = str(payload)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _add_curve_args(sp):
    sp.add_argument("--p", type=int, required=True, help="field characteristic")
    sp.add_argument("--k", type=int, default=1, help="extension degree")
    sp.add_argument("--modulus", default=None,
                    help="extension modulus coefficients, little-endian")
    sp.add_argument("--f", required=True,
                    help="curve coefficients, little-endian (constant first)")


def _add_common(sp, plot=False):
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=["json", "text", "csv"],
                    default="json")
    sp.add_argument("--output", default=None, help="write output to a file")
    sp.add_argument("--jobs", type=int, default=1,
                    help="reserved for per-prime parallelism; subtasks run "
                         "sequentially in this implementation")
    sp.add_argument("--unsafe-guard", type=int, default=None,
                    help="raise the enumeration/desk guards to this value")
    if plot:
        sp.add_argument("--plot", default=None, metavar="PATH",
                        help="render a figure alongside the output")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hyperzeta",
        description="Local zeta functions of hyperelliptic curves via "
                    "ell-torsion polynomial systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="naive point counts over F_{q^i}")
    _add_curve_args(sp)
    sp.add_argument("--i", type=int, default=1, help="extension degree to count")
    _add_common(sp)

    sp = sub.add_parser("zeta-naive", help="zeta numerator from point counts")
    _add_curve_args(sp)
    _add_common(sp)

    sp = sub.add_parser("zeta-schoof", help="zeta numerator via Algorithm-1")
    _add_curve_args(sp)
    sp.add_argument("--backend", choices=["bruteforce", "systems"],
                    default="bruteforce")
    sp.add_argument("--policy", choices=["fail", "fallback", "skip"],
                    default="fail")
    sp.add_argument("--e-max", type=int, default=12)
    sp.add_argument("--dict-guard", type=int, default=81)
    _add_common(sp, plot=True)

    sp = sub.add_parser("torsion", help="J[ell] resolutions per weight")
    _add_curve_args(sp)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--backend", choices=["systems", "bruteforce"],
                    default="systems")
    sp.add_argument("--e-max", type=int, default=12)
    sp.add_argument("--dict-guard", type=int, default=81)
    _add_common(sp, plot=True)

    sp = sub.add_parser("divpoly", help="division-polynomial data and degrees")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--ell", required=True,
                    help="multiplier or range like 3..8")
    sp.add_argument("--p", type=int, default=None,
                    help="prime for the measurement field")
    sp.add_argument("--f", default=None,
                    help="optional curve coefficients (else random curves)")
    sp.add_argument("--curves", type=int, default=3,
                    help="random curves that must agree")
    _add_common(sp, plot=True)

    sp = sub.add_parser("tuples", help="enumerate non-genericity tuples")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--validate", default=None,
                    help="JSON tuple to validate instead of enumerating")
    _add_common(sp)

    sp = sub.add_parser("bezout", help="multi-homogeneous Bezout bound")
    sp.add_argument("--nx", type=int, required=True)
    sp.add_argument("--ny", type=int, required=True)
    sp.add_argument("--dx", type=int, required=True)
    sp.add_argument("--dy", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    _add_common(sp)

    sp = sub.add_parser("semireduce", help="Algorithm-2 matrix reduction")
    sp.add_argument("--matrix", required=True,
                    help="JSON matrix, e.g. [[-1,2],[1,-1]]")
    _add_common(sp)

    sp = sub.add_parser("verify", help="re-check a saved artifact")
    sp.add_argument("--artifact", required=True, help="artifact JSON file")
    sp.add_argument("--system", default=None,
                    help="system JSON for resolution artifacts")
    _add_common(sp)

    return ap


def run(argv):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except HyperzetaError as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc),
                          "kind": type(exc).__name__}), file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}),
              file=sys.stderr)
        return 2


def _guards_from(args):
    guards = {"e_max": getattr(args, "e_max", 12),
              "dict_guard": getattr(args, "dict_guard", 81)}
    if getattr(args, "unsafe_guard", None):
        guards["zeta_guard"] = args.unsafe_guard
        guards["desk_guard"] = args.unsafe_guard
        guards["dict_guard"] = max(guards["dict_guard"], args.unsafe_guard)
    return guards


def _dispatch(args):
    cmd = args.command
    if cmd == "count":
        curve = _curve_from_args(args)
        guard = args.unsafe_guard or (1 << 24)
        n = count_points_naive(curve, args.i, guard=guard, seed=args.seed)
        _emit(args, {"schema": SCHEMA, "kind": "count", "q": curve.ctx.q,
                     "i": args.i, "count": n})
        return 0
    if cmd == "zeta-naive":
        curve = _curve_from_args(args)
        guard = args.unsafe_guard or (1 << 24)
        P = naive_zeta(curve, guard=guard, seed=args.seed)
        _emit(args, {"schema": SCHEMA, "kind": "zeta", "method": "naive",
                     "g": P.g, "q": P.q, "P": list(P.a),
                     "weil": weil_verify(P)})
        return 0
    if cmd == "zeta-schoof":
        curve = _curve_from_args(args)
        P, rep = schoof_pila(curve, backend=args.backend, seed=args.seed,
                             policy=args.policy, guards=_guards_from(args),
                             collect_report=True)
        rep["weil"] = weil_verify(P)
        rep["method"] = "schoof"
        if getattr(args, "plot", None):
            render_zeta_figure(rep, args.plot)
            rep["figure"] = args.plot
        _emit(args, rep)
        return 0
    if cmd == "torsion":
        curve = _curve_from_args(args)
        guards = _guards_from(args)
        if args.backend == "systems":
            out = solve_torsion_via_systems(curve, args.ell, seed=args.seed,
                                            guards=guards, collect=True)
            degs = {w: r.degree for w, r in out["resolutions"].items()}
            payload = {
                "schema": SCHEMA, "kind": "torsion", "ell": args.ell,
                "backend": "systems", "count": out["count"],
                "field_degree": out["curve"].ctx.k,
                "per_weight_degrees": {str(w): d for w, d in degs.items()},
                "resolutions": {str(w): r.serialize()
                                for w, r in out["resolutions"].items()},
            }
            if getattr(args, "plot", None):
                render_torsion_figure(degs, args.plot)
                payload["figure"] = args.plot
            _emit(args, payload)
            return 0
        from .torsion import brute_force_torsion
        group = brute_force_torsion(curve, args.ell, e_max=guards["e_max"],
                                    seed=args.seed,
                                    dict_guard=guards["dict_guard"])
        payload = {"schema": SCHEMA, "kind": "torsion", "ell": args.ell,
                   "backend": "bruteforce",
                   "field_degree": group.curve.ctx.k,
                   "basis": [b.serialize() for b in group.basis]}
        _emit(args, payload)
        return 0
    if cmd == "divpoly":
        if ".." in args.ell:
            lo, hi = args.ell.split("..")
            mult = list(range(int(lo), int(hi) + 1))
        else:
            mult = [int(x) for x in args.ell.split(",")]
        mult = [m for m in mult if m > args.g]
        f = _ints(args.f) if args.f else None
        reports = degree_table(args.g, mult, f=f, seed=args.seed,
                               curves=args.curves, p=args.p)
        if args.format == "csv":
            out = degree_table_csv(reports)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(out)
            else:
                print(out, end="")
        else:
            out = degree_table_json(reports)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(out + "\n")
            else:
                print(out)
        if getattr(args, "plot", None):
            render_degree_figure(reports, args.plot)
        return 0
    if cmd == "tuples":
        if args.validate:
            data = json.loads(args.validate)
            tup = NonGenericityTuple(data["w"], data["lambda"], data["t"],
                                     data["eps"], data["M"])
            tup.validate_against_genus(args.g)
            _emit(args, {"schema": SCHEMA, "kind": "tuple_validation",
                         "valid": True, "tuple": tup.serialize()})
            return 0
        tuples = enumerate_tuples(args.g)
        _emit(args, {"schema": SCHEMA, "kind": "tuples", "g": args.g,
                     "count": len(tuples),
                     "tuples": [t.serialize() for t in tuples]})
        return 0
    if cmd == "bezout":
        prof = bezout_bound(args.nx, args.ny, args.dx, args.dy, args.m)
        _emit(args, {"schema": SCHEMA, "kind": "bezout",
                     "exact": prof.exact, "coarse": prof.coarse})
        return 0
    if cmd == "semireduce":
        M = json.loads(args.matrix)
        _emit(args, {"schema": SCHEMA, "kind": "semireduce",
                     "matrix": M, "reduced": semi_reduce(M)})
        return 0
    if cmd == "verify":
        with open(args.artifact) as fh:
            artifact = json.load(fh)
        kind = artifact.get("kind")
        if kind == "geometric_resolution":
            if not args.system:
                raise ValueError("resolution verification needs --system")
            with open(args.system) as fh:
                system = BiHomSystem.deserialize(json.load(fh))
            res = GeometricResolution.deserialize(artifact)
            ok, rep = verify_resolution(res, system, seed=args.seed)
            _emit(args, {"schema": SCHEMA, "kind": "verify", "ok": ok,
                         "report": rep})
            return 0 if ok else 1
        if kind in ("zeta", "zeta_schoof"):
            from .zeta import ZetaNumerator
            P = ZetaNumerator(artifact["g"], artifact["q"], artifact["P"])
            rep = weil_verify(P)
            ok = (rep["functional_equation"] and rep["coeff_bounds"]
                  and rep["positivity"])
            _emit(args, {"schema": SCHEMA, "kind": "verify", "ok": ok,
                         "report": rep})
            return 0 if ok else 1
        if kind == "degree_table":
            from .divpoly import predicted_d0_degree, predicted_e0_degree
            ok = True
            for row in artifact["rows"]:
                g, n = row["g"], row["ell"]
                if row["deg_d"][-1] != predicted_d0_degree(g, n):
                    ok = False
                if row["deg_e"][-1] != predicted_e0_degree(g, n):
                    ok = False
            _emit(args, {"schema": SCHEMA, "kind": "verify", "ok": ok})
            return 0 if ok else 1
        raise ValueError(f"unknown artifact kind {kind!r}")
    raise ValueError(f"unknown command {cmd!r}")


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
