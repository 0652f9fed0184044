"""Command-line interface.

Subcommands:
  enumerate   stream the (filtered) sequence of a given order
  stats       gap-tuple histogram with exact frequencies
  families    residue/index families behind one gap tuple
  region      exact area (and vertices) of an index region
  density     limiting density of a gap tuple: main part + tail bound
  compare     empirical vs limiting densities, optional SVG chart
  lemma1      lattice counts of a region against their asymptotic main terms
  identity3   exact finite-order window-count identity, both sides

Exit codes: 0 success, 1 invalid input, 2 failed internal self-check.
Rationals are printed as num/den strings; CSV tables carry numerator and
denominator columns plus a float convenience column.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from ._errors import InvariantViolation
from . import density as density_mod
from . import lattice as lattice_mod
from .farey import enumerate_farey
from .gaps import tuple_counts
from .geometry import base_triangle, make_polygon, polygon_area, region_tuple, scale_polygon
from .residues import Pinned, enumerate_families


def _parse_ints(text: str, what: str) -> tuple:
    try:
        vals = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"{what} must be comma-separated integers, got {text!r}")
    if not vals:
        raise ValueError(f"{what} must be non-empty")
    return vals


def _frac_str(fr: Fraction) -> str:
    return str(Fraction(fr))


def _check_format(fmt: str):
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")


def cmd_enumerate(args) -> int:
    _check_format(args.format)
    stream = enumerate_farey(args.q, args.p)
    out = sys.stdout
    if args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["a", "q"])
        for f in stream:
            writer.writerow([f.a, f.q])
    else:
        head = {"q_max": args.q, "p": args.p}
        out.write("{" + ", ".join(f'"{k}": {json.dumps(v)}' for k, v in head.items()))
        out.write(', "fractions": [')
        first = True
        for f in stream:
            if not first:
                out.write(", ")
            out.write(f'{{"a": {f.a}, "q": {f.q}}}')
            first = False
        out.write("]}\n")
    return 0


def cmd_stats(args) -> int:
    _check_format(args.format)
    hist = tuple_counts(args.q, args.p, args.h)
    rows = sorted(hist.counts.items(), key=lambda kv: (-kv[1], kv[0]))
    if args.top is not None:
        if args.top < 1:
            raise ValueError("--top must be >= 1")
        rows = rows[: args.top]
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow([f"delta_{i + 1}" for i in range(args.h)]
                        + ["count", "frequency_num", "frequency_den", "frequency_float"])
        for delta, cnt in rows:
            fr = Fraction(cnt, hist.population)
            writer.writerow(list(delta) + [cnt, fr.numerator, fr.denominator,
                                           repr(float(fr))])
    else:
        doc = {
            "q_max": args.q, "p": args.p, "h": args.h,
            "population": hist.population,
            "rows": [
                {"delta": list(delta), "count": cnt,
                 "frequency": _frac_str(Fraction(cnt, hist.population)),
                 "frequency_float": float(Fraction(cnt, hist.population))}
                for delta, cnt in rows
            ],
        }
        json.dump(doc, sys.stdout)
        sys.stdout.write("\n")
    return 0


def cmd_families(args) -> int:
    delta = _parse_ints(args.delta, "--delta")
    fams = enumerate_families(args.p, args.h, delta)
    recs = []
    for fam in fams:
        slots = []
        for s in fam.template.slots:
            if isinstance(s, Pinned):
                slots.append({"kind": "pinned", "value": s.value})
            else:
                slots.append({"kind": "free", "residue": s.residue})
        recs.append({"alphas": list(fam.pattern.alphas),
                     "r": fam.r, "slots": slots})
    json.dump({"p": args.p, "h": args.h, "delta": list(delta),
               "count": len(recs), "families": recs}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def cmd_region(args) -> int:
    ns = _parse_ints(args.tuple, "--tuple")
    poly = region_tuple(ns)
    area = polygon_area(poly)
    if poly.is_empty:
        print("empty, area 0/1")
        return 0
    print(f"area {area.numerator}/{area.denominator}")
    if args.vertices:
        for x, y in poly.vertices:
            print(f"{x.numerator}/{x.denominator} {y.numerator}/{y.denominator}")
    return 0


def cmd_density(args) -> int:
    delta = _parse_ints(args.delta, "--delta")
    if len(delta) != args.h:
        raise ValueError(f"--delta must have {args.h} entries")
    est = density_mod.theoretical_density(args.p, args.h, delta,
                                          n_cut=args.n_cut, threads=args.threads)
    json.dump({"p": args.p, "h": args.h, "delta": list(delta),
               "cutoff": est.cutoff, "main": _frac_str(est.main),
               "tail_bound": _frac_str(est.tail_bound)}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def cmd_compare(args) -> int:
    _check_format(args.format)
    rows = density_mod.compare(args.q, args.p, args.h, delta_max=args.delta_max,
                               n_cut=args.n_cut, threads=args.threads)
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow([f"delta_{i + 1}" for i in range(args.h)]
                        + ["empirical_num", "empirical_den", "main_num", "main_den",
                           "tail_num", "tail_den", "empirical_float", "main_float",
                           "abs_difference", "reference_scale"])
        for r in rows:
            writer.writerow(list(r.delta)
                            + [r.empirical.numerator, r.empirical.denominator,
                               r.main.numerator, r.main.denominator,
                               r.tail_bound.numerator, r.tail_bound.denominator,
                               repr(r.empirical_float), repr(r.main_float),
                               repr(r.abs_difference), repr(r.reference_scale)])
    else:
        doc = {"q_max": args.q, "p": args.p, "h": args.h,
               "rows": [{"delta": list(r.delta),
                         "empirical": _frac_str(r.empirical),
                         "main": _frac_str(r.main),
                         "tail_bound": _frac_str(r.tail_bound),
                         "empirical_float": r.empirical_float,
                         "main_float": r.main_float,
                         "abs_difference": r.abs_difference,
                         "reference_scale": r.reference_scale} for r in rows]}
        json.dump(doc, sys.stdout)
        sys.stdout.write("\n")
    if args.svg:
        from .plotting import comparison_figure

        comparison_figure(rows, args.svg,
                          title=f"Q={args.q} p={args.p} H={args.h}")
        print(f"figure written to {args.svg}", file=sys.stderr)
    return 0


def cmd_lemma1(args) -> int:
    q = args.q
    p = args.p
    if args.region == "triangle":
        poly = scale_polygon(base_triangle(), q)
        region = lattice_mod.PolygonRegion(poly)
        area = polygon_area(poly)
    elif args.region == "square":
        poly = make_polygon([(0, 0), (q, 0), (q, q), (0, q)])
        region = lattice_mod.PolygonRegion(poly)
        area = polygon_area(poly)
    elif args.region == "tuple":
        if not args.tuple:
            raise ValueError("--region tuple needs --tuple n1,n2,...")
        ns = _parse_ints(args.tuple, "--tuple")
        region = lattice_mod.CellRegion(q, ns)
        area = polygon_area(region_tuple(ns)) * q * q
    else:
        raise ValueError(f"unknown region {args.region!r}")
    terms = lattice_mod.asymptotic_main_terms(area, p)
    classes = []
    for a in range(1, p):
        for b in range(p):
            cls = lattice_mod.CongruenceClass(p, a, b)
            brute = lattice_mod.brute_count_congruent(region, cls)
            moeb = lattice_mod.moebius_count_congruent(region, cls)
            classes.append({"a": a, "b": b, "brute": brute, "moebius": moeb,
                            "main": terms.per_class})
    drop_p = lattice_mod.brute_count_p(region, p)
    json.dump({"q_max": q, "p": p, "region": args.region,
               "area": _frac_str(Fraction(area)),
               "drop_p": {"count": drop_p, "main": terms.drop_p},
               "classes": classes}, sys.stdout)
    sys.stdout.write("\n")
    return 0


def cmd_identity3(args) -> int:
    delta = _parse_ints(args.delta, "--delta")
    if len(delta) != args.h:
        raise ValueError(f"--delta must have {args.h} entries")
    rep = density_mod.identity_check(args.q, args.p, args.h, delta)
    json.dump({"q_max": rep.q_max, "p": rep.p, "h": rep.h,
               "delta": list(rep.delta),
               "window_count": rep.window_count,
               "lattice_count": rep.lattice_count,
               "difference": rep.difference,
               "boundary_tuples": [{"alphas": list(al), "ns": list(ns), "count": c}
                                   for al, ns, c in rep.boundary_tuples]},
              sys.stdout)
    sys.stdout.write("\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fareygaps",
        description="Gap statistics of prime-filtered Farey fractions")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for sharded walks and region sums")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("enumerate", help="stream the sequence of one order")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--format", default="csv")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("stats", help="gap-tuple histogram")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--top", type=int, default=None)
    sp.add_argument("--format", default="csv")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("families", help="families behind one gap tuple")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--format", default="json")
    sp.set_defaults(func=cmd_families)

    sp = sub.add_parser("region", help="area/vertices of an index region")
    sp.add_argument("--tuple", required=True)
    sp.add_argument("--vertices", action="store_true")
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("density", help="limiting density of a gap tuple")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--n-cut", type=int, default=None)
    sp.add_argument("--format", default="json")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("compare", help="empirical vs limiting densities")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--delta-max", type=int, default=6)
    sp.add_argument("--n-cut", type=int, default=None)
    sp.add_argument("--svg", default=None)
    sp.add_argument("--format", default="csv")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("lemma1", help="lattice counts vs asymptotic main terms")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--region", default="triangle",
                    choices=["triangle", "square", "tuple"])
    sp.add_argument("--tuple", default=None)
    sp.set_defaults(func=cmd_lemma1)

    sp = sub.add_parser("identity3", help="finite-order window-count identity")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--delta", required=True)
    sp.set_defaults(func=cmd_identity3)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; map those to the bad-input code
        return 0 if exc.code in (0, None) else 1
    try:
        ret = args.func(args)
        return 0 if ret is None else ret
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
