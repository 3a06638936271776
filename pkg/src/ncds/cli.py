"""Command-line interface.

    ncds spaces --set {rc|rc0|dmr0|krv2|krv1skew|conj2} --weight W
                [--lambda p/q] [--out FILE]
    ncds verify --theorem {A|B|C|D|E} [--max-weight W] [--seed S] [--out FILE]
    ncds residual --check {rc|dmr|krv1|nckrv2} --in series.json
    ncds conjecture [--max-weight W] [--seed S] [--out FILE]

Exit codes: 0 all pass, 1 a check failed or a residual is nonzero, 2 input
error.  NCDS_THREADS sets the worker count for independent (check, weight)
tasks; NCDS_CACHE_DIR enables the on-disk solution-space cache.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__
from .harness import (DEFAULT_CEILINGS, FIRST_WEIGHT, VERIFIERS, CheckReport,
                      conjecture_scan, space)
from .lie import cached_space, SolutionSpace
from .series import series_from_json, series_to_json


class InputError(Exception):
    pass


def _dump(data, path):
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_rational(text):
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _threads():
    try:
        return max(1, int(os.environ.get("NCDS_THREADS", "1")))
    except ValueError:
        return 1


def cmd_spaces(args):
    lam = _parse_rational(args.lam) if args.lam is not None else None
    if args.set != "rc" and lam is not None:
        raise InputError("--lambda only applies to the rc space")
    def compute():
        return space(args.set, args.weight, lam)
    if lam is None:
        sol = cached_space(args.set, args.weight, compute,
                           _space_from_json, lambda s: s.to_json())
    else:
        sol = compute()
    _dump(sol.to_json(), args.out)
    return 0


def _basis_entry_from_json(data):
    if "a1" in data:
        from .kv import TangentialDerivation
        return TangentialDerivation(series_from_json(data["a1"]),
                                    series_from_json(data["a2"]),
                                    normalize=False)
    return series_from_json(data)


def _space_from_json(data):
    basis = [_basis_entry_from_json(b) for b in data["basis"]]
    offset = _basis_entry_from_json(data["offset"]) if "offset" in data else None
    return SolutionSpace(data["space"], data["weight"], basis, offset=offset)


def cmd_verify(args):
    fn = VERIFIERS[args.theorem]
    max_weight = args.max_weight or DEFAULT_CEILINGS[args.theorem]
    report = _run_weightwise(args.theorem, fn, max_weight, args.seed)
    _dump(report.to_json(), args.out)
    for line in report.summary_lines():
        print(line, file=sys.stderr)
    return 0 if report.ok else 1


def _run_weightwise(theorem, fn, max_weight, seed):
    workers = _threads()
    lo = FIRST_WEIGHT[theorem]
    if workers == 1 or max_weight < lo:
        return fn(max_weight, seed)
    # one worker per (check, weight); reassemble in weight order so the
    # report stays byte-identical to a sequential run
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {w: pool.submit(fn, max_weight, seed, [w])
                   for w in range(lo, max_weight + 1)}
        entries = []
        name = None
        for w in range(lo, max_weight + 1):
            rep = futures[w].result()
            name = rep.check
            entries.extend(rep.weights)
    return CheckReport(name, entries, seed)


def cmd_conjecture(args):
    report = conjecture_scan(args.max_weight, args.seed)
    _dump(report.to_json(), args.out)
    return 0


def cmd_residual(args):
    with open(args.infile) as fh:
        psi = series_from_json(json.load(fh))
    from .coaction import rc_residual
    from .dshuffle import dmr_residual
    from .kv import krv1_residual, nc_krv2_fit
    if args.check == "rc":
        res = rc_residual(psi)
        payload = {"residual": series_to_json(res), "zero": res.is_zero}
    elif args.check == "dmr":
        res = dmr_residual(psi)
        terms = [{"left": "".join(str(i) for i in l),
                  "right": "".join(str(i) for i in r),
                  "num": str(c.numerator if isinstance(c, Fraction) else c),
                  "den": str(c.denominator if isinstance(c, Fraction) else 1)}
                 for (l, r), c in sorted(res.terms.items())]
        payload = {"residual": {"terms": terms}, "zero": res.is_zero}
    elif args.check == "krv1":
        res = krv1_residual(psi)
        payload = {"residual": series_to_json(res), "zero": res.is_zero}
    elif args.check == "nckrv2":
        res, f = nc_krv2_fit(psi)
        payload = {"residual": series_to_json(res), "f": series_to_json(f),
                   "zero": res.is_zero}
    else:
        raise InputError("unknown check %r" % (args.check,))
    payload["check"] = args.check
    _dump(payload, args.out)
    return 0 if payload["zero"] else 1


def build_parser():
    p = argparse.ArgumentParser(prog="ncds", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version="ncds " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spaces", help="compute a named solution space")
    sp.add_argument("--set", required=True,
                    choices=("rc", "rc0", "dmr0", "krv2", "krv1skew", "conj2"))
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", default=None,
                    help="rational p/q pinning the [x0,x1] coefficient (rc only)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_spaces)

    vp = sub.add_parser("verify", help="machine-check one of the theorems")
    vp.add_argument("--theorem", required=True, choices=tuple("ABCDE"))
    vp.add_argument("--max-weight", type=int, default=None)
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--out", default=None)
    vp.set_defaults(fn=cmd_verify)

    rp = sub.add_parser("residual", help="evaluate a residual on a series")
    rp.add_argument("--check", required=True,
                    choices=("rc", "dmr", "krv1", "nckrv2"))
    rp.add_argument("--in", dest="infile", required=True)
    rp.add_argument("--out", default=None)
    rp.set_defaults(fn=cmd_residual)

    cp = sub.add_parser("conjecture", help="report-only dimension scan")
    cp.add_argument("--max-weight", type=int, default=7)
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--out", default=None)
    cp.set_defaults(fn=cmd_conjecture)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print("ncds: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print("ncds: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
