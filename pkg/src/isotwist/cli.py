"""Command line front end.

Exit codes: 0 when every check passes, 1 on an invariant violation (or a
point that is not on the curve), 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds
from .curve import TwistedCurve, count_points_affine_plus_infinity, j1728, j_invariant, morphism_view, validate_point
from .curve import EllipticCurve
from .errors import BudgetExceeded, IsotwistError, NotOnCurve
from .family import family_instance
from .field import parse_field
from .poly import parse_poly
from .search import DEFAULT_BUDGET, SweepSpec, search_separable, sweep
from .theorems import arithmetic_progression_check, check_conditions, check_lemma_gdf, decompose

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump(obj, args):
    _emit(json.dumps(obj, indent=2, sort_keys=False) + "\n", args.out)


def _curve(args) -> TwistedCurve:
    spec = parse_field(args.field)
    A = parse_poly(args.A, spec, "t")
    f = parse_poly(args.f, spec, "x")
    return TwistedCurve.from_polys(A, f)


def cmd_search(args) -> int:
    c = _curve(args)
    report = search_separable(c, budget=args.budget, jobs=args.jobs)
    violations = []
    for P in report.separable:
        lemma = check_lemma_gdf(c, P)
        if not lemma.ok:
            violations.append({"point": P.to_json(), "lemma": lemma.to_json()})
        if P.F.degree > bounds.rh_degree_cap(c.genus, 1):
            violations.append({"point": P.to_json(), "error": "degree above Riemann-Hurwitz cap"})
    if not report.bound_respected:
        violations.append({"error": "separable count exceeds q^(2d-3)"})
    if args.format == "text":
        lines = [
            c.label(),
            f"separable: {len(report.separable)}  inseparable: {len(report.inseparable)}"
            f"  bound q^(2d-3) = {report.bound_value}",
        ]
        lines += [f"  F = {P.F.to_text()}, G = {P.G.to_text()}  [{P.kind}]" for P in report.points]
        lines.append("ok" if not violations else f"VIOLATIONS: {violations}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        out = {"schema": SCHEMA, **report.to_json(), "violations": violations, "ok": not violations}
        _dump(out, args)
    return 1 if violations else 0


def cmd_verify(args) -> int:
    c = _curve(args)
    F = parse_poly(args.F, c.spec, "t")
    G = parse_poly(args.G, c.spec, "t")
    try:
        P = validate_point(c, F, G)
    except NotOnCurve as exc:
        _dump({"schema": SCHEMA, "curve": c.to_json(), "on_curve": False, "error": str(exc), "ok": False}, args)
        return 1
    out = {"schema": SCHEMA, "curve": c.to_json(), "on_curve": True, "point": P.to_json()}
    ok = True
    if not P.is_constant:
        out["morphism"] = morphism_view(c, P).to_json()
    if P.is_separable:
        lemma = check_lemma_gdf(c, P)
        out["lemma"] = lemma.to_json()
        ok &= lemma.ok
        if c.gamma is not None:
            cond = check_conditions(c, P)
            out["conditions"] = cond.to_json()
            ok &= cond.ok
            dec = decompose(c, P)
            out["decomposition"] = dec.to_json()
            ok &= dec.ok
    out["ok"] = bool(ok)
    _dump(out, args)
    return 0 if ok else 1


def cmd_bounds(args) -> int:
    mode = args.mode
    if mode == "lang":
        if args.g is None or args.s is None:
            raise UsageError("bounds lang needs --g and --s")
        if args.r is None:
            value = bounds.combined_lang_bound(args.g, args.s)
            out = {"mode": "lang", "g": args.g, "s": args.s, "r": 4 * args.g, "bound": value}
        else:
            value = bounds.lang_bound(args.g, args.s, args.r)
            out = {"mode": "lang", "g": args.g, "s": args.s, "r": args.r, "bound": value}
        out["bound_floor"] = int(bounds.lemma_bound_upper(args.s + 4 * (args.g - 1), 1, out["r"]))
    elif mode == "lattice":
        if args.gram is None or args.T is None:
            raise UsageError("bounds lattice needs --gram and --T")
        lat = bounds.LatticeSpec(json.loads(args.gram))
        T = Fraction(args.T)
        chk = bounds.check_lemma_latt(lat, T)
        out = {"mode": "lattice", "gram": [list(r) for r in lat.gram], "T": str(T), **chk.to_json()}
        out["schema"] = SCHEMA
        _dump(out, args)
        return 0 if chk.ok else 1
    elif mode == "twist":
        if args.q is None or args.d is None:
            raise UsageError("bounds twist needs --q and --d")
        out = {"mode": "twist", "q": args.q, "d": args.d, "bound": bounds.twist_bound(args.q, args.d)}
    else:
        if args.g is None and args.d is not None:
            args.g, args.s = (args.d - 1) // 2, 1
        if args.g is None or args.s is None:
            raise UsageError("bounds rh needs --g and --s (or --d)")
        out = {"mode": "rh", "g": args.g, "s": args.s, "cap": bounds.rh_degree_cap(args.g, args.s)}
    out["schema"] = SCHEMA
    _dump(out, args)
    return 0


def cmd_family(args) -> int:
    if args.q is None:
        raise UsageError("family needs --q")
    inst = family_instance(args.q)
    _dump({"schema": SCHEMA, **inst.to_json()}, args)
    return 0 if inst.ok else 1


def cmd_jinv(args) -> int:
    spec = parse_field(args.field)
    E = EllipticCurve(parse_poly(args.f, spec, "x"))
    j = j_invariant(E)
    out = {
        "schema": SCHEMA,
        "field": spec.to_text(),
        "f": E.f.to_text("x"),
        "j": j.to_text(),
        "j_is_1728": j == j1728(spec),
        "arithmetic_progression": arithmetic_progression_check(E),
    }
    if spec.q <= 10**4:
        out["n_points"] = count_points_affine_plus_infinity(E)
    _dump(out, args)
    return 0


def _sweep_spec(args) -> SweepSpec:
    if args.spec:
        return SweepSpec.from_json(Path(args.spec).read_text())
    if args.field is None or args.d is None:
        raise UsageError("sweep needs --spec, or --field and --d")
    spec = parse_field(args.field)
    A_list = [parse_poly(s, spec, "t") for s in (args.A or [])]
    f_list = [parse_poly(s, spec, "x") for s in (args.f or [])]
    A_filter = args.A_filter or ("explicit" if args.A is not None else "monic")
    f_filter = args.f_filter or ("fixed" if args.f is not None else "all")
    return SweepSpec(
        spec, args.d, A_filter, f_filter, A_list, f_list, args.sample, args.seed, args.budget,
        args.oracle, args.lifts,
    )


def _write_sweep(report, args):
    agg = report.aggregate()
    if args.out:
        Path(args.out).write_text(report.to_csv())
        Path(args.out).with_suffix(".json").write_text(json.dumps(agg, indent=2) + "\n")
    elif args.format == "json":
        _emit(json.dumps({**agg, "rows": report.rows}, indent=2) + "\n", None)
    else:
        _emit(report.to_csv(), None)
        sys.stderr.write(json.dumps(agg) + "\n")


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    try:
        report = sweep(spec, jobs=args.jobs)
    except BudgetExceeded as exc:
        partial = getattr(exc, "partial", None)
        if partial is not None:
            _write_sweep(partial, args)
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _write_sweep(report, args)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isotwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, curve=True):
        if curve:
            sp.add_argument("--field", required=True, help="P, P^N or P^N;modulus=[...]")
            sp.add_argument("--A", required=True, help="twisting polynomial in t")
            sp.add_argument("--f", required=True, help="cubic in x")
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--out", default=None)

    sp = sub.add_parser("search", help="list integral points in the separable window")
    common(sp)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="audit one point (F, G)")
    common(sp)
    sp.add_argument("--F", required=True)
    sp.add_argument("--G", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="evaluate bounds")
    sp.add_argument("mode", choices=["lang", "lattice", "twist", "rh"])
    for name in ("g", "s", "r", "q", "d"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--gram")
    sp.add_argument("--T")
    common(sp, curve=False)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("family", help="the (t^q - t) y^2 = x^3 - x family")
    sp.add_argument("--q", type=int)
    common(sp, curve=False)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("jinv", help="j-invariant and point count of y^2 = f(x)")
    sp.add_argument("--field", required=True)
    sp.add_argument("--f", required=True)
    common(sp, curve=False)
    sp.set_defaults(func=cmd_jinv)

    sp = sub.add_parser("sweep", help="search and check every curve of a family")
    sp.add_argument("--spec", help="SweepSpec JSON file")
    sp.add_argument("--field")
    sp.add_argument("--d", type=int)
    sp.add_argument("--A-filter", dest="A_filter", choices=["monic", "all", "constant_derivative", "explicit"])
    sp.add_argument("--f-filter", dest="f_filter", choices=["all", "monic", "fixed"])
    sp.add_argument("--A", action="append", help="explicit A (repeatable)")
    sp.add_argument("--f", action="append", help="fixed f (repeatable)")
    sp.add_argument("--sample", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--oracle", action="store_true", help="also cross-check against naive enumeration")
    sp.add_argument("--lifts", action="store_true", help="also check Frobenius lifts")
    common(sp, curve=False)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (IsotwistError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
