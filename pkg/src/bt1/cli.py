"""Command-line surface: reports, diagrams, sweeps, and the Ex6 strata probe."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .catalog import sweep, write_catalog
from .diagram import ascii_diagram, svg_diagram
from .errors import (Bt1Error, ConstraintError, DimensionCeiling,
                     InternalError, PathExplosion, PermutationParseError,
                     RTooLarge)
from .kappa import DEFAULT_MAX_R, condition_c, kappa_of_class, kappa_of_perm
from .kraft import (SMALL_EXTENSION_CHAIN, a_number, build_pair, dual,
                    dual_datum, ex6_a1, ex6_pair, kraft_invariant, p_rank,
                    p_rank_oracle, predicted_ex6_stratum)
from .perm import Bt1Datum, refine
from .polysys import finiteness_report, gen_system

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CONSTRAINT = 3
EXIT_SIZE = 4
EXIT_INTERNAL = 5

_CYCLE_RE = re.compile(r"\(\s*([0-9\s,]+?)\s*\)")


def parse_permutation(text, r):
    """Cycle notation "(1 2 3)(4 5)" or one-line image list "[2,1,3]"."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise PermutationParseError("unterminated image list: %r" % text)
        try:
            images = [int(tok) for tok in text[1:-1].split(",") if tok.strip()]
        except ValueError:
            raise PermutationParseError("bad image list: %r" % text)
        if len(images) != r:
            raise ConstraintError("permutation has %d images, expected r=%d"
                                  % (len(images), r))
        return tuple(images)
    if not text or text[0] != "(":
        raise PermutationParseError("expected cycle or image-list notation, "
                                    "got %r" % text)
    covered = _CYCLE_RE.findall(text)
    if not covered or "".join(_CYCLE_RE.sub("", text).split()):
        raise PermutationParseError("malformed cycle notation: %r" % text)
    images = list(range(1, r + 1))
    seen = set()
    for cycle_text in covered:
        try:
            cycle = [int(tok) for tok in re.split(r"[\s,]+", cycle_text.strip())
                     if tok]
        except ValueError:
            raise PermutationParseError("bad cycle: %r" % cycle_text)
        if any(x < 1 or x > r for x in cycle):
            raise ConstraintError("cycle entry out of range 1..%d in %r"
                                  % (r, cycle_text))
        if seen.intersection(cycle) or len(set(cycle)) != len(cycle):
            raise ConstraintError("repeated element in cycles: %r" % text)
        seen.update(cycle)
        for pos, x in enumerate(cycle):
            images[x - 1] = cycle[(pos + 1) % len(cycle)]
    return tuple(images)


def _datum(args):
    pi = parse_permutation(args.pi, args.c + args.d)
    return Bt1Datum(args.c, args.d, pi)


def _dump(obj, args):
    print(json.dumps(obj, indent=2 if args.pretty else None, sort_keys=True))


def _max_r(args):
    if getattr(args, "max_r", None):
        return args.max_r
    return int(os.environ.get("BT1_MAX_R", DEFAULT_MAX_R))


def _jobs(args):
    if getattr(args, "jobs", None):
        return args.jobs
    env = os.environ.get("BT1_JOBS")
    return int(env) if env else None


def cmd_classify(args):
    _dump(refine(_datum(args)).to_json_obj(), args)


def cmd_kappa(args):
    datum = _datum(args)
    report = kappa_of_perm(datum, args.p)
    if args.klass:
        report.kappa_class = kappa_of_class(datum, args.p, _max_r(args))
    _dump(report.to_json_obj(), args)


def cmd_condition_c(args):
    datum = _datum(args)
    holds, report = condition_c(datum, args.p, _max_r(args))
    _dump(report.to_json_obj(), args)


def cmd_certify(args):
    _dump(finiteness_report(_datum(args), args.p).to_json_obj(), args)


def cmd_system(args):
    system = gen_system(refine(_datum(args)), args.p)
    print(system.to_text())


def cmd_diagram(args):
    datum = _datum(args)
    if args.format == "svg":
        print(svg_diagram(datum))
    else:
        print(ascii_diagram(datum))


def cmd_sweep(args):
    primes = tuple(int(tok) for tok in args.p.split(","))
    entries = sweep(args.c, args.d, primes, jobs=_jobs(args),
                    max_r=_max_r(args))
    if args.catalog:
        write_catalog(entries, args.catalog)
        print("%d classes -> %s" % (len(entries), args.catalog))
    else:
        for entry in entries:
            print(json.dumps(entry, sort_keys=True))


def cmd_prank(args):
    import numpy.random

    K_points = []
    if args.point:
        coords = tuple(int(tok) for tok in args.point.split(","))
        if len(coords) != 4:
            raise ConstraintError("a point needs 4 coordinates, got %d"
                                  % len(coords))
        K_points.append(coords)
    rng = numpy.random.Generator(numpy.random.Philox(args.seed))
    from .gf import GF

    K = GF(args.p, args.e)
    elements = list(K.elements())
    for _ in range(args.samples):
        K_points.append(tuple(elements[rng.integers(len(elements))]
                              for _ in range(4)))
    report = {"p": args.p, "e": args.e, "seed": args.seed, "points": []}
    ok = True
    for raw in K_points:
        x = tuple(v if isinstance(v, tuple) else K.from_int(v) for v in raw)
        predicted = predicted_ex6_stratum(args.p, args.e, x)
        pair = ex6_pair(args.p, args.e, x)
        stable = p_rank(pair)
        _, a1 = ex6_a1(args.p, args.e, x)
        oracle = p_rank_oracle(K, a1, chain=SMALL_EXTENSION_CHAIN)
        agree = stable == oracle and (predicted is None or predicted == stable)
        ok = ok and agree
        report["points"].append({
            "x": [list(K.to_fp_vec(v)) for v in x],
            "predicted": predicted, "stableRank": stable,
            "oracle": oracle, "agree": agree})
    report["allAgree"] = ok
    _dump(report, args)
    if not ok:
        raise InternalError("stratum prediction disagreed with computation")


def cmd_dual(args):
    datum = _datum(args)
    dual_inv = dual(kraft_invariant(datum))
    out = {
        "classKey": kraft_invariant(datum).key(),
        "dualClassKey": dual_inv.key(),
        "dualC": dual_inv.c,
        "dualD": dual_inv.d,
        "dualRepresentativePi": list(dual_datum(datum).pi),
    }
    _dump(out, args)


def cmd_invariant(args):
    datum = _datum(args)
    inv = kraft_invariant(datum)
    pair = build_pair(datum, 2)
    _dump({"classKey": inv.key(), "words": inv.to_json_obj(),
           "c": inv.c, "d": inv.d,
           "pRank": p_rank(pair), "aNumber": a_number(pair)}, args)


def _add_datum_args(sub):
    sub.add_argument("-c", type=int, required=True)
    sub.add_argument("-d", type=int, required=True)
    sub.add_argument("--pi", required=True,
                     help="cycle notation '(1 2 3)' or image list '[2,3,1]'")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bt1",
        description="Combinatorial invariants of BT1 stratifications")
    parser.add_argument("--json", action="store_true", default=True,
                        help="JSON output (default)")
    parser.add_argument("--pretty", action="store_true")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int)
    parser.add_argument("--max-r", type=int, dest="max_r")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="refined J-set table")
    _add_datum_args(sub)
    sub.set_defaults(func=cmd_classify)

    sub = subs.add_parser("kappa", help="kappa invariant")
    _add_datum_args(sub)
    sub.add_argument("-p", type=int, required=True)
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--class", dest="klass", action="store_true")
    group.add_argument("--perm", dest="klass", action="store_false")
    sub.set_defaults(func=cmd_kappa, klass=False)

    sub = subs.add_parser("condition-c", help="condition (C) via class kappas")
    _add_datum_args(sub)
    sub.add_argument("-p", type=int, required=True)
    sub.set_defaults(func=cmd_condition_c)

    sub = subs.add_parser("certify", help="finiteness certificate pipeline")
    _add_datum_args(sub)
    sub.add_argument("-p", type=int, required=True)
    sub.set_defaults(func=cmd_certify)

    sub = subs.add_parser("system", help="the polynomial system x^(p^nu)=Q")
    _add_datum_args(sub)
    sub.add_argument("-p", type=int, required=True)
    sub.set_defaults(func=cmd_system)

    sub = subs.add_parser("diagram", help="J-set grid")
    _add_datum_args(sub)
    sub.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sub.set_defaults(func=cmd_diagram)

    sub = subs.add_parser("sweep", help="class catalog for (c, d)")
    sub.add_argument("-c", type=int, required=True)
    sub.add_argument("-d", type=int, required=True)
    sub.add_argument("-p", default="2,3,5", help="comma-separated primes")
    sub.add_argument("--catalog", help="JSONL output path")
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("prank", help="Ex6 stratification probe")
    sub.add_argument("-p", type=int, default=2)
    sub.add_argument("-e", type=int, default=1)
    sub.add_argument("--point", help="x1,x2,x3,x4 as integers mod p")
    sub.add_argument("--samples", type=int, default=0)
    sub.set_defaults(func=cmd_prank)

    sub = subs.add_parser("dual", help="Cartier dual class")
    _add_datum_args(sub)
    sub.set_defaults(func=cmd_dual)

    sub = subs.add_parser("invariant", help="Kraft canonical invariant")
    _add_datum_args(sub)
    sub.set_defaults(func=cmd_invariant)

    return parser


def exit_code_for(err):
    if isinstance(err, PermutationParseError):
        return EXIT_PARSE
    if isinstance(err, ConstraintError):
        return EXIT_CONSTRAINT
    if isinstance(err, (RTooLarge, PathExplosion, DimensionCeiling)):
        return EXIT_SIZE
    return EXIT_INTERNAL


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Bt1Error as err:
        print("error: %s" % err, file=sys.stderr)
        return exit_code_for(err)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
