"""Command line interface.

Subcommands: pair, scan, classnum, bounds, family.  Run with -h for flags.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bounds as bnd
from .catalog import builtin_entry, load_catalog, search_generators
from .curves import CurveModel, RationalPoint, TwistPoint, family_twist_point
from .errors import ClasspairError
from .heights import build_profile
from .pairing import pair_form, pairing_context
from .qforms import (
    class_number,
    hurwitz_class_number,
    is_fundamental,
    reduce_form,
    reduced_forms,
)


def _parse_point(text: str) -> RationalPoint:
    parts = [p.strip() for p in text.replace("(", "").replace(")", "").split(",")]
    if len(parts) == 3:
        return RationalPoint(int(parts[0]), int(parts[1]), int(parts[2]))
    if len(parts) == 2:
        return RationalPoint.from_xy(Fraction(parts[0]), Fraction(parts[1]))
    raise argparse.ArgumentTypeError("point must be 'A,B,C' or 'x,y'")


def _parse_twist(text: str) -> tuple[int, int, int]:
    parts = [int(p.strip()) for p in text.replace("(", "").replace(")", "").split(",")]
    if len(parts) == 2:
        return parts[0], parts[1], 1
    if len(parts) == 3:
        return parts[0], parts[1], parts[2]
    raise argparse.ArgumentTypeError("twist point must be 'u,v' or 'u,v,w'")


def _resolve_entry(args):
    if args.label:
        if args.catalog:
            for entry in load_catalog(args.catalog):
                if entry.label == args.label:
                    return entry
            raise ClasspairError(f"label {args.label!r} not found in {args.catalog}")
        return builtin_entry(args.label)
    if args.a4 is None or args.a6 is None:
        raise ClasspairError("need --label or both --a4 and --a6")
    E = CurveModel(args.a4, args.a6)
    if args.gens:
        gens = tuple(_parse_point(g) for g in args.gens.split())
    else:
        gens = tuple(search_generators(E, bound=args.search_bound))
        if not gens:
            raise ClasspairError(
                "no independent integral points found; pass --gens explicitly"
            )
    from .catalog import CurveCatalogEntry

    return CurveCatalogEntry(label="adhoc", a4=args.a4, a6=args.a6, generators=gens)


def _add_curve_args(sub) -> None:
    sub.add_argument("--label", help="catalog label (builtin or from --catalog)")
    sub.add_argument("--catalog", help="path to a catalog file")
    sub.add_argument("--a4", type=int, help="curve coefficient a4")
    sub.add_argument("--a6", type=int, help="curve coefficient a6")
    sub.add_argument("--gens", help="generators, e.g. '(0,1,1) (4,1,1)'")
    sub.add_argument(
        "--search-bound",
        type=int,
        default=100,
        help="integral point search bound when no generators are given",
    )


def cmd_pair(args) -> int:
    E = CurveModel(args.a4, args.a6)
    P = _parse_point(args.point)
    u, v, w = _parse_twist(args.twist)
    Q = TwistPoint(u, v, w, args.disc)
    ctx = pairing_context(E, args.disc, P, Q, ell=args.ell)
    F = pair_form(ctx)
    red, _ = reduce_form(F)
    print(f"alpha = {ctx.alpha}, G = {ctx.G}, H = {ctx.Hg}")
    print(f"ell = {ctx.ell} (mod {ctx.ell_modulus})")
    print(f"form    = {F.a} X^2 + {F.b} XY + {F.c} Y^2  (disc {F.discriminant})")
    print(f"reduced = ({red.a}, {red.b}, {red.c})")
    if args.oracle:
        h = class_number(args.disc)
        print(f"h(-{args.disc}) = {h}")
    return 0


def cmd_scan(args) -> int:
    entry = _resolve_entry(args)
    profile = build_profile(entry.curve, entry.generators, args.tol)
    opts = bnd.ScanOptions(
        tol=args.tol,
        oracle_cap=args.oracle_cap,
        height_budget=args.height_budget,
    )
    reports = bnd.scan(profile, range(args.t_start, args.t_stop + 1), opts)
    print(bnd.format_table(reports))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            bnd.write_csv(reports, fh)
        print(f"wrote {args.csv}", file=sys.stderr)
    return 0


def cmd_classnum(args) -> int:
    for D in args.disc:
        h = class_number(D)
        line = f"h(-{D}) = {h}"
        if args.hurwitz:
            line += f", H(-{D}) = {hurwitz_class_number(D)}"
        line += f", fundamental: {'yes' if is_fundamental(D) else 'no'}"
        print(line)
        if args.forms:
            for F in reduced_forms(D):
                print(f"  ({F.a}, {F.b}, {F.c})")
    return 0


def cmd_bounds(args) -> int:
    entry = _resolve_entry(args)
    profile = build_profile(entry.curve, entry.generators, args.tol)
    print(f"curve: y^2 = x^3 + {entry.a4}x + {entry.a6}, rank {profile.rank}")
    print(
        f"regulator in [{profile.regulator.lo:.6g}, {profile.regulator.hi:.6g}], "
        f"diameter <= {profile.diameter.hi:.6g}, "
        f"count constant in [{profile.count_constant.lo:.6g}, {profile.count_constant.hi:.6g}]"
    )
    if args.t is not None:
        D = bnd.family_discriminant(entry.curve, args.t)
        print(f"t = {args.t}: D = {D}, fundamental: {'yes' if is_fundamental(D) else 'no'}")
        ev = bnd.class_bound_family(profile, args.t)
        _print_eval("family bound", ev)
        gen = bnd.class_bound_general(profile, D, family_twist_point(entry.curve, args.t))
        _print_eval("general bound", gen)
        print(f"ggz bound: {bnd.ggz_bound(D):.6g}")
    elif args.disc is not None:
        if not args.twist:
            raise ClasspairError("--disc needs --twist u,v[,w]")
        u, v, w = _parse_twist(args.twist)
        Q = TwistPoint(u, v, w, args.disc)
        ev = bnd.class_bound_general(profile, args.disc, Q)
        _print_eval("general bound", ev)
        print(f"ggz bound: {bnd.ggz_bound(args.disc):.6g}")
    else:
        raise ClasspairError("pass --t for the family, or --disc with --twist")
    return 0


def _print_eval(name: str, ev) -> None:
    if ev.value is not None:
        print(f"{name}: {ev.value:.6g}")
    else:
        print(f"{name}: hypotheses not satisfied")
    for check in ev.checks:
        status = "ok " if check.satisfied else "FAIL"
        print(f"  [{status}] {check.name} (margin {check.margin:.4g})")


def cmd_family(args) -> int:
    fam = bnd.family_curve(args.a, args.b, cube=args.cube)
    E = fam.curve
    print(f"curve: y^2 = x^3 + {E.a4}x + {E.a6}")
    for P in fam.points:
        print(f"  point ({P.x}, {P.y})")
    if fam.independent:
        print("candidates are independent (Gram determinant excludes zero)")
        const = bnd.family_constants(args.a, args.b, cube=args.cube)
        kind = "cube" if args.cube else "plain"
        print(f"{kind} family constant: {const:.6g}")
    else:
        print("candidates NOT certifiably independent at this size")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="classpair",
        description="Class number lower bounds from elliptic-curve points",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", help="pair one point with one twist point")
    p.add_argument("--a4", type=int, required=True)
    p.add_argument("--a6", type=int, required=True)
    p.add_argument("--point", required=True, help="'A,B,C' or 'x,y'")
    p.add_argument("--twist", required=True, help="'u,v' or 'u,v,w'")
    p.add_argument("--disc", type=int, required=True, help="positive D for -D")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--oracle", action="store_true", help="also print h(-D)")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("scan", help="sweep the family discriminants -D_E(t)")
    _add_curve_args(p)
    p.add_argument("--t-start", type=int, default=2)
    p.add_argument("--t-stop", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--oracle-cap", type=int, default=bnd.DEFAULT_ORACLE_CAP)
    p.add_argument("--height-budget", type=float, default=None)
    p.add_argument("--csv", help="also write rows to this CSV file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("classnum", help="brute-force class numbers")
    p.add_argument("disc", type=int, nargs="+", help="positive D for -D")
    p.add_argument("--forms", action="store_true", help="list reduced forms")
    p.add_argument("--hurwitz", action="store_true", help="also print H(-D)")
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("bounds", help="evaluate the bounds for one discriminant")
    _add_curve_args(p)
    p.add_argument("--t", type=int, default=None, help="family parameter")
    p.add_argument("--disc", type=int, default=None, help="explicit D")
    p.add_argument("--twist", help="'u,v' or 'u,v,w' for --disc")
    p.add_argument("--tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("family", help="build y^2 = x^3 - a^2 x + b^2 curves")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--cube", action="store_true", help="use b^6 and three candidates")
    p.set_defaults(func=cmd_family)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClasspairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
