"""Command-line front end.

    k3div lattice info --spec "U(2)+~A1^20"
    k3div divisible check --spec "~A1^8" --class 2,0,0,0,0,0,0,0
    k3div qe analyze --field gf2 --phi 1 --a 0 --psi "t^5+t^2+1"
    k3div sing classify --f "t^3 + s^5"
    k3div catalog verify [--cell 20,1]

Every command prints one JSON document (sorted keys, fractions as ``"p/q"``).
Exit status: 0 success, 1 verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .fibration import FibrationError, WeierstrassQE, analyze, is_k3
from .gf.parse import ParseError, parse_field, parse_poly
from .lattice import (
    LatticeError,
    build_lattice,
    discriminant_form,
    half_class_q_test,
    is_two_divisible,
)
from .singularity import classify, jacobian_colength, parse_bipoly

FIELD_ENV = "K3DIV_FIELD"


class InputError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):  # never expected; refuse silently lossy output
        raise TypeError("floating point value in report")
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


# --- commands -----------------------------------------------------------------------


def _lattice(spec: str):
    try:
        return build_lattice(spec)
    except LatticeError as exc:
        raise InputError(f"lattice spec {spec!r}: {exc}") from None


def cmd_lattice_info(args):
    L = _lattice(args.spec)
    D = discriminant_form(L)
    p, q = L.signature
    out = {
        "spec": args.spec,
        "rank": L.rank,
        "det": L.det,
        "signature": [p, q],
        "gram": [list(r) for r in L.gram],
        "basis": [list(b) for b in L.basis],  # in the coordinates of the summands' root bases
        "discriminant": D.to_json(),
        "length": D.length,
        "type_I": D.type_I,
        "milgram": D.gauss_signature_mod8 is None or D.gauss_signature_mod8 == (p - q) % 8,
    }
    summary = f"{args.spec}: rank {L.rank}, signature ({p},{q}), det {L.det}, length {D.length}, type {'I' if D.type_I else 'II'}"
    return out, summary, True


def cmd_divisible_check(args):
    L = _lattice(args.spec)
    try:
        coords = [int(x) for x in args.cls.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"--class must be comma-separated integers, got {args.cls!r}") from None
    if len(coords) != L.rank:
        raise InputError(f"--class has {len(coords)} entries, lattice has rank {L.rank}")
    D = L.cls(coords)
    res = is_two_divisible(L, D)
    half = half_class_q_test(L, D)
    out = {
        "spec": args.spec,
        "class": coords,
        "self_intersection": D.self_int,
        "divisible": res.divisible,
        "witness": list(res.witness) if res.witness else None,
        "residue": list(res.residue) if res.residue else None,
        "half_in_dual": half.in_dual,
        "q_half": None if half.q_value is None else half.q_value,
    }
    summary = f"class {coords} is {'' if res.divisible else 'not '}2-divisible in {args.spec}"
    return out, summary, True


def cmd_qe_analyze(args):
    spec = args.field or os.environ.get(FIELD_ENV, "gf2")
    try:
        F = parse_field(spec)
        phi, a, psi = (parse_poly(s, F) for s in (args.phi, args.a, args.psi))
    except ParseError as exc:
        raise InputError(str(exc)) from None
    W = WeierstrassQE(phi, a, psi)
    chk = is_k3(W)
    if not chk:
        return {"weierstrass": W.to_json(), "k3": False, "reasons": list(chk.reasons)}, "not a K3 Weierstrass model: " + "; ".join(chk.reasons), False
    try:
        rep = analyze(W)
    except FibrationError as exc:
        return {"weierstrass": W.to_json(), "k3": True, "error": str(exc)}, f"analysis failed: {exc}", False
    out = rep.to_json()
    out["k3"] = True
    ok = all(c.verified for c in rep.certificates)
    led = rep.height_ledger.identity() if rep.height_ledger else "no section P"
    summary = f"ell={rep.ell}, {rep.n_III} III, r={rep.r}, sigma={rep.sigma}; {led}; certificates n={[c.n for c in rep.certificates]}"
    return out, summary, ok


def cmd_sing_classify(args):
    spec = args.field or os.environ.get(FIELD_ENV, "gf2")
    try:
        F = parse_field(spec)
        f = parse_bipoly(args.f, F)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    v = classify(f)
    out = v.to_json()
    out["f"] = args.f
    out["jacobian_colength"] = jacobian_colength(f).as_json()
    return out, f"{args.f}: {v.type} (colength {v.colength})", True


def cmd_catalog_verify(args):
    from .catalog import verify_all

    cell = None
    if args.cell:
        try:
            n, s = (int(x) for x in args.cell.split(","))
        except ValueError:
            raise InputError(f"--cell expects n,sigma, got {args.cell!r}") from None
        from .catalog import ALLOWED_N, SIGMAS

        if n not in ALLOWED_N or s not in SIGMAS:
            raise InputError(f"no cell ({n}, {s}); n in {ALLOWED_N}, sigma in 1..10")
        cell = (n, s)
    rep = verify_all(cell=cell, workers=args.workers)
    if cell:
        c = rep["cell"]
        summary = f"cell (n={c['n']}, sigma={c['sigma']}): {c['status']} via {c['kind']}, verified={c['verified']}"
    else:
        summary = rep["matrix_grid"] + "\n" + ", ".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in sorted(rep["checks"].items()))
    return rep, summary, rep["passed"]


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the JSON report to this file instead of stdout")
    common.add_argument("--quiet", "-q", action="store_true", default=argparse.SUPPRESS, help="suppress the human-readable summary on stderr")
    p = argparse.ArgumentParser(prog="k3div", parents=[common], description="Exact lattice and fibration arithmetic for K3 surfaces in characteristic 2.")
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("lattice").add_subparsers(dest="action", required=True)
    c = g.add_parser("info", parents=[common], help="invariants of a lattice expression")
    c.add_argument("--spec", required=True)
    c.set_defaults(func=cmd_lattice_info)

    g = sub.add_parser("divisible").add_subparsers(dest="action", required=True)
    c = g.add_parser("check", parents=[common], help="is a class (basis coordinates) 2-divisible")
    c.add_argument("--spec", required=True)
    c.add_argument("--class", dest="cls", required=True)
    c.set_defaults(func=cmd_divisible_check)

    g = sub.add_parser("qe").add_subparsers(dest="action", required=True)
    c = g.add_parser("analyze", parents=[common], help="analyze y^2 = x^3 + (t phi^2 + a^2) x + t psi^2")
    c.add_argument("--field", default=None, help=f"gf2, gf(2^k) or gf(2^k; modulus=...); default ${FIELD_ENV} or gf2")
    c.add_argument("--phi", required=True)
    c.add_argument("--a", required=True)
    c.add_argument("--psi", required=True)
    c.set_defaults(func=cmd_qe_analyze)

    g = sub.add_parser("sing").add_subparsers(dest="action", required=True)
    c = g.add_parser("classify", parents=[common], help="classify the double point z^2 = f(t, s) at the origin")
    c.add_argument("--f", required=True)
    c.add_argument("--field", default=None)
    c.set_defaults(func=cmd_sing_classify)

    g = sub.add_parser("catalog").add_subparsers(dest="action", required=True)
    c = g.add_parser("verify", parents=[common], help="verify the tables and the realizability matrix")
    c.add_argument("--cell", default=None, help="only the cell n,sigma")
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_catalog_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.output = getattr(args, "output", None)
    args.quiet = getattr(args, "quiet", False)
    try:
        out, summary, ok = args.func(args)
    except InputError as exc:
        print(f"k3div: error: {exc}", file=sys.stderr)
        return 2
    text = dumps(out) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        print(summary, file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
