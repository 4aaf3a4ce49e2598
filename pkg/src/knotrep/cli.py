"""Command-line interface.

Subcommands: alexander, twisted, search-reps, cover-homology, certify,
verify, base-change, resultant.  Output is human-readable by default and
JSON with --json; repeated runs print byte-identical output.  Exit status
is 0 on success, 1 on a mathematical negative (exhausted search, failed
verification) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certify as certify_mod
from .covers import (branched_cover_presentation, cover_homology,
                     cyclic_action, induced_cover_action,
                     induced_quotient_homology, presentation_homology)
from .errors import BudgetExhausted, KnotrepError
from .laurent import base_change, cyclic_resultant, parse_poly, resultant
from .permrep import PermRep, search_homs, trivial_rep
from .twisted import twisted_alexander_poly
from .words import abelianization_map, builtin_presentation, parse_presentation


def _emit_json(payload):
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load_presentation(args):
    if getattr(args, "knot", None):
        return builtin_presentation(args.knot)
    if getattr(args, "pres", None):
        with open(args.pres) as fh:
            return parse_presentation(fh.read(), name=args.pres)
    raise KnotrepError("one of --knot or --pres is required")


def _load_rep(pres, path):
    with open(path) as fh:
        data = json.load(fh)
    return PermRep.from_json(pres, data)


def _add_presentation_args(sub):
    sub.add_argument("--knot", help="builtin presentation name")
    sub.add_argument("--pres", help="presentation file")


def cmd_alexander(args):
    pres = _load_presentation(args)
    result = twisted_alexander_poly(trivial_rep(pres))
    if args.json:
        _emit_json({"alexander": result.delta_rho.to_json()})
    else:
        print(f"alexander polynomial: {result.delta_rho.pretty()}")
    return 0


def cmd_twisted(args):
    pres = _load_presentation(args)
    rep = _load_rep(pres, args.rep)
    result = twisted_alexander_poly(rep)
    if args.json:
        _emit_json(result.to_json())
    else:
        print(f"delta_rho: {result.delta_rho.pretty()}")
        print(f"delta_0: {result.delta_0.pretty()}")
        print(f"wada quotient: ({result.wada_numerator.pretty()}) / "
              f"({result.wada_denominator.pretty()})")
        print(f"is_unit: {result.is_unit}")
        print(f"untwisted divides: {result.untwisted_divides}")
    return 0


def cmd_search_reps(args):
    pres = _load_presentation(args)
    truncated = False
    try:
        reps = search_homs(pres, args.degree, budget=args.budget,
                           threads=args.threads)
    except BudgetExhausted as exc:
        reps = exc.partial
        truncated = True
    payload = {
        "degree": args.degree,
        "count": len(reps),
        "truncated": truncated,
        "representations": [
            {
                "images": {name: list(p.images)
                           for name, p in zip(pres.generators, rep.images)},
                "cycles": {name: p.cycle_string()
                           for name, p in zip(pres.generators, rep.images)},
                "image_order": rep.image_order(),
            }
            for rep in reps
        ],
    }
    if args.json:
        _emit_json(payload)
    else:
        print(f"{len(reps)} class(es) at degree {args.degree}"
              + (" (truncated)" if truncated else ""))
        for entry in payload["representations"]:
            cyc = ", ".join(f"{k} -> {v}" for k, v in sorted(entry["cycles"].items()))
            print(f"  order {entry['image_order']}: {cyc}")
    return 0


def cmd_cover_homology(args):
    pres = _load_presentation(args)
    eps = abelianization_map(pres)
    rep = _load_rep(pres, args.rep) if args.rep else None

    if args.branched:
        target = branched_cover_presentation(pres, eps, args.branched)
        if rep is not None:
            raise KnotrepError("--rep with --branched is not supported; "
                               "branched covers of induced covers need a rep "
                               "of the branched group")
        group = presentation_homology(target)
        label = f"branched cover of order {args.branched}"
    elif rep is not None:
        r = args.cyclic if args.cyclic else 1
        if args.coinvariants:
            group = induced_quotient_homology(rep, r)
            label = f"induced infinite cover modulo t^{r} - 1"
        else:
            action = induced_cover_action(rep, r)
            group = cover_homology(pres, action)
            label = f"induced cover of degree {action.degree}"
    elif args.cyclic:
        action = cyclic_action(pres, eps, args.cyclic)
        group = cover_homology(pres, action)
        label = f"cyclic cover of order {args.cyclic}"
    else:
        raise KnotrepError("choose one of --cyclic, --branched, --rep")

    if args.json:
        _emit_json({"cover": label, "homology": group.to_json()})
    else:
        print(f"H1 of {label}: {group}")
    return 0


def cmd_certify(args):
    pres = _load_presentation(args)
    limits = certify_mod.SearchLimits(
        max_r=args.max_r,
        max_degree=args.max_degree,
        node_budget=args.budget,
        time_limit=args.time_limit,
        threads=args.threads,
    )
    outcome = certify_mod.certify_nontrivial(pres, limits)
    if isinstance(outcome, certify_mod.Exhausted):
        if args.json:
            _emit_json({"certificate": None, "exhausted": outcome.to_json()})
        else:
            print(f"exhausted ({outcome.reason}); frontier:")
            for r, degree, count in outcome.frontier:
                print(f"  branch order {r}, degree {degree}: {count} class(es)")
        return 1
    payload = outcome.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.json:
        _emit_json(payload)
    else:
        print(f"certificate for {outcome.knot_id or 'presentation'}:")
        print(f"  branch order {outcome.branch_order}, degree {outcome.degree}, "
              f"least period {outcome.least_period}")
        print(f"  delta_rho: {outcome.delta_rho.pretty()}")
        if args.out:
            print(f"  written to {args.out}")
    return 0


def cmd_verify(args):
    with open(args.certificate) as fh:
        data = json.load(fh)
    ok, lines = certify_mod.verify_certificate(data)
    if args.json:
        _emit_json({"verified": ok, "transcript": lines})
    else:
        for line in lines:
            print(line)
        print("verified" if ok else "verification FAILED")
    return 0 if ok else 1


def cmd_base_change(args):
    f = parse_poly(args.poly)
    result = base_change(f, args.power)
    if args.json:
        _emit_json({"poly": result.to_pairs(), "power": args.power})
    else:
        print(result.pretty(var="s"))
    return 0


def cmd_resultant(args):
    f = parse_poly(args.f)
    if args.cyclic:
        value = cyclic_resultant(f, args.cyclic)
    else:
        if not args.g:
            raise KnotrepError("provide --g or --cyclic")
        value = resultant(f, parse_poly(args.g))
    if args.json:
        _emit_json({"resultant": str(value)})
    else:
        print(value)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knotrep",
        description="twisted Alexander polynomials from finite permutation "
                    "representations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alexander", help="classical Alexander polynomial")
    _add_presentation_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("twisted", help="twisted polynomial for a representation")
    _add_presentation_args(p)
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_twisted)

    p = sub.add_parser("search-reps", help="search representations into S_N")
    _add_presentation_args(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search_reps)

    p = sub.add_parser("cover-homology", help="H1 of cyclic/branched/induced covers")
    _add_presentation_args(p)
    p.add_argument("--cyclic", type=int, default=None, metavar="R")
    p.add_argument("--branched", type=int, default=None, metavar="R")
    p.add_argument("--rep", default=None, help="representation JSON file")
    p.add_argument("--coinvariants", action="store_true",
                   help="with --rep/--cyclic: quotient H1 of the infinite "
                        "induced cover by t^R - 1 instead of H1 of the "
                        "finite cover")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cover_homology)

    p = sub.add_parser("certify", help="search for a non-unit twisted polynomial")
    _add_presentation_args(p)
    p.add_argument("--max-r", type=int, default=3, dest="max_r")
    p.add_argument("--max-degree", type=int, default=6, dest="max_degree")
    p.add_argument("--budget", type=int, default=500_000)
    p.add_argument("--time-limit", type=float, default=None, dest="time_limit")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="write the certificate JSON here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-verify a serialized certificate")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("base-change", help="characteristic polynomial under t -> t^r")
    p.add_argument("--poly", required=True, help="polynomial in t, e.g. 't^2-t+1'")
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_base_change)

    p = sub.add_parser("resultant", help="resultant of two polynomials")
    p.add_argument("--f", required=True)
    p.add_argument("--g", default=None)
    p.add_argument("--cyclic", type=int, default=None,
                   help="use g = t^R - 1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_resultant)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (KnotrepError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
