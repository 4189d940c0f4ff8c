"""Command-line front end: ``enc-lab <command> ...`` (also ``python -m enc_lab``).

Exit codes: 0 success, 1 a verified claim failed, 2 invalid input,
3 the germ is not enc so the boundary formula does not apply, 4 not klt.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import classification, explore, lemmas
from .exact import parse_rat
from .formats import FORMATS, emit, parse_boundary, parse_ints, parse_rats, parse_support, read_corpus, render
from .hyperquotient import HyperquotientGerm, classify_low_values, validate_setting
from .parallel import resolve_jobs
from .toric import (
    CyclicQuotient,
    NotEncError,
    NotIsolatedError,
    NotKltError,
    SemiInvarianceError,
    is_enc_cyclic_quotient,
    is_enc_pair,
    mld_cyclic_quotient,
    mld_with_boundary,
    pair_log_discrepancy,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NOT_ENC, EXIT_NOT_KLT = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return parse_ints(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rats(text: str) -> tuple[Fraction, ...]:
    try:
        return parse_rats(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (ENC_LAB_JOBS overrides)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="enc-lab", description="Exact mld and enc computations for quotient threefold germs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mld", help="mld of a cyclic quotient, optionally with a monomial boundary")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=_ints, required=True)
    p.add_argument("--boundary", default="", help="'b:m+m;b:m', monomials as e1.e2.e3")
    _output(p)

    p = sub.add_parser("enc", help="is the cyclic quotient (or pair) enc, and its witness")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=_ints, required=True)
    p.add_argument("--boundary", default="")
    _output(p)

    p = sub.add_parser("beta", help="setting checks and the low-value vector of hyperquotient germs")
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=_ints)
    p.add_argument("--e", type=int)
    p.add_argument("--ftype", choices=("cA", "odd", "cDE"))
    p.add_argument("--g", default="", help="monomials of g, space separated, optional @T truncation")
    p.add_argument("--corpus", default=None, help="file of germ lines instead of --r/--a/--e/--ftype/--g")
    _output(p)

    p = sub.add_parser("gap-scan", help="largest mld below 1 over isolated 1/r(a1,a2,a3), r <= R")
    p.add_argument("--R", type=int, required=True)
    _output(p)

    p = sub.add_parser("emld", help="mlds of enc pairs with coefficients from a finite set")
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--gamma", type=_rats, default=(Fraction(0),))
    p.add_argument("--eps", type=_rat, default=Fraction(0))
    p.add_argument("--menu-degree", type=int, default=3, help="boundary monomials up to this degree")
    p.add_argument("--compare-R", type=int, default=None, help="also sweep this smaller bound and report stabilization")
    _output(p)

    p = sub.add_parser("verify", help="exhaustive verifiers")
    vsub = p.add_subparsers(dest="target", required=True)
    q = vsub.add_parser("terminal-lemma")
    q.add_argument("--R", type=int, required=True)
    _output(q)
    q = vsub.add_parser("transfer")
    q.add_argument("--delta", type=_rat, required=True)
    q.add_argument("--R", type=int, required=True)
    q.add_argument("--compare-R", type=int, default=None, help="fail unless the set equals the one at this bound")
    _output(q)
    q = vsub.add_parser("index-bound")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--eps", type=_rat, required=True)
    q.add_argument("--R", type=int, required=True)
    _output(q)
    q = vsub.add_parser("family")
    q.add_argument("--id", required=True, choices=sorted(classification.FAMILIES))
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--R", type=int, required=True)
    q.add_argument("--g-mode", choices=classification.G_MODES + ("both",), default="both")
    _output(q)
    q = vsub.add_parser("census")
    q.add_argument("--R", type=int, required=True)
    q.add_argument("--k", dest="k_max", type=int, default=3, help="largest k tabulated")
    q.add_argument("--g-mode", choices=classification.G_MODES, default="witness")
    _output(q)
    return parser


def _germ(args) -> CyclicQuotient:
    X = CyclicQuotient(args.r, args.a)
    if not X.is_isolated:
        raise InputError(f"{X} is not isolated")
    return X


def cmd_mld(args) -> int:
    X = _germ(args)
    B = parse_boundary(args.boundary)
    if B:
        value = mld_with_boundary(X, B)
    else:
        value = mld_cyclic_quotient(X)
    if args.format == "table" and args.out is None:
        print(value)
    else:
        emit(render([{"germ": X, "boundary": B, "mld": value}], args.format), args.out, sys.stdout)
    return EXIT_OK


def cmd_enc(args) -> int:
    X = _germ(args)
    B = parse_boundary(args.boundary)
    if B:
        flag, wit = is_enc_pair(X, B)
        ld = pair_log_discrepancy(X, B, wit.alpha) if flag else None
    else:
        flag, wit = is_enc_cyclic_quotient(X)
        ld = wit.log_discrepancy if flag else None
    row = {"germ": X, "boundary": B, "enc": flag, "k": wit.k if flag else None, "alpha": wit.alpha if flag else None, "log_discrepancy": ld}
    emit(render([row], args.format), args.out, sys.stdout)
    return EXIT_OK


def cmd_beta(args) -> int:
    if args.corpus:
        germs = _read_corpus(args.corpus)
    else:
        if None in (args.r, args.a, args.e, args.ftype):
            raise InputError("beta needs --r, --a, --e and --ftype (or --corpus)")
        germs = [HyperquotientGerm(args.r, args.a, args.e, args.ftype, parse_support(args.g))]
    rows = []
    for germ in germs:
        setting = validate_setting(germ)
        row = {"germ": germ, "setting": "ok" if setting.ok else "fails " + ",".join(setting.failures)}
        if setting.ok:
            res = classify_low_values(germ)
            row.update(status=res.status, beta=res.beta.beta if res.beta else None, t=res.beta.t if res.beta else None, k=res.beta.k if res.beta else (1 if res.status == "a" else None), note=res.reason)
        rows.append(row)
    emit(render(rows, args.format), args.out, sys.stdout)
    return EXIT_OK


def _read_corpus(path: str) -> list[HyperquotientGerm]:
    germs = read_corpus(path)
    bad = [g for g in germs if not isinstance(g, HyperquotientGerm)]
    if bad:
        raise InputError(f"beta needs hyperquotient lines, got {bad[0]}")
    return germs


def cmd_gap_scan(args) -> int:
    rep = explore.gap_scan(args.R, resolve_jobs(args.jobs))
    rows = [{"r": r, "a": a, "mld": rep.max_below_one} for r, a in rep.witnesses]
    rows += [{"r": r, "a": a, "mld": m, "violation": True} for r, a, m in rep.violations]
    meta = {"R": rep.R, "germs": rep.germs, "max_mld_below_1": rep.max_below_one, "ok": rep.ok}
    emit(render(rows, args.format, meta), args.out, sys.stdout)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_emld(args) -> int:
    jobs = resolve_jobs(args.jobs)
    rep = explore.emld(args.gamma, args.R, args.eps, menu_degree=args.menu_degree, jobs=jobs)
    summary = rep.summary
    if args.compare_R is not None:
        small = explore.emld(args.gamma, args.compare_R, args.eps, menu_degree=args.menu_degree, jobs=jobs)
        summary = explore.acc_report(rep.values, args.eps, previous=small.values)
    meta = {
        "R": args.R,
        "gamma": list(rep.gamma),
        "eps": rep.eps,
        "boundary_menu": f"single monomial components of degree <= {args.menu_degree}",
        "count": summary.count,
        "min_gap": summary.min_gap,
        "longest_increasing_run": summary.longest_increasing_run,
    }
    if summary.stabilized is not None:
        meta["compare_R"] = args.compare_R
        meta["stabilized"] = summary.stabilized
    emit(render([{"mld": v} for v in rep.values], args.format, meta), args.out, sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    jobs = resolve_jobs(args.jobs)
    t0 = time.perf_counter()
    if args.target == "terminal-lemma":
        rep = lemmas.verify_terminal_lemma(args.R, jobs)
        meta = {
            "R": rep.R,
            "domain_raw": rep.domain_raw,
            "hypothesis_raw": rep.hypothesis_raw,
            "hypothesis_canonical": rep.hypothesis_canonical,
            "variant_1": rep.by_variant.get(1, 0),
            "variant_2": rep.by_variant.get(2, 0),
            "violations": len(rep.violations),
        }
        rows = [{"r": t.r, "a": t.a, "e": t.e} for t in rep.violations]
        code = EXIT_OK if rep.ok else EXIT_VIOLATION
    elif args.target == "transfer":
        found = lemmas.transfer_fivefold_scan(args.delta, args.R, jobs)
        meta = {"delta": args.delta, "R": args.R, "values": sorted(found), "count": len(found)}
        code = EXIT_OK
        if args.compare_R is not None:
            other = lemmas.transfer_fivefold_scan(args.delta, args.compare_R, jobs)
            meta["compare_R"] = args.compare_R
            meta["identical"] = other == found
            meta["new_values"] = sorted(found - other)
            code = EXIT_OK if other == found else EXIT_VIOLATION
        rows = [{"value": v} for v in sorted(found)]
    elif args.target == "index-bound":
        r = lemmas.index_bound_search(args.d, args.eps, args.R)
        meta = {"d": args.d, "eps": args.eps, "R": args.R, "largest_r": r, "at_search_limit": r == args.R}
        rows = [{"largest_r": r}]
        code = EXIT_OK
    elif args.target == "family":
        modes = classification.G_MODES if args.g_mode == "both" else (args.g_mode,)
        rows, meta, code = [], {"family": args.id, "k": args.k, "R": args.R}, EXIT_OK
        for mode in modes:
            rep = classification.verify_family(args.id, args.k, args.R, mode, jobs)
            meta[f"{mode}.examined"] = rep.examined
            meta[f"{mode}.statuses"] = rep.statuses
            meta[f"{mode}.hits"] = len(rep.hits)
            meta[f"{mode}.max_r"] = rep.max_r
            meta[f"{mode}.cutoff"] = rep.cutoff
            meta[f"{mode}.beyond_cutoff"] = len(rep.beyond_cutoff)
            meta[f"{mode}.stabilized"] = rep.stabilized
            meta[f"{mode}.escaped"] = len(rep.escaped)
            escaped = set(rep.escaped)
            rows += [
                {"g_mode": mode, "r": h.r, "a": h.a, "e": h.e, "beta": h.beta, "t": h.t, "k": h.k, "escaped": h in escaped}
                for h in rep.hits
            ]
            if not rep.ok:
                code = EXIT_VIOLATION
    else:
        rep = classification.enc_census(args.R, args.k_max, args.g_mode, jobs)
        meta = {"R": rep.R, "k_max": rep.k_max, "g_mode": rep.g_mode, "examined": rep.examined, "statuses": rep.statuses}
        for k in range(1, args.k_max + 1):
            meta[f"k={k}.germs"] = len(rep.by_k(k))
            if k >= 2:
                meta[f"k={k}.betas"] = len(rep.gamma(k))
        meta["residuals"] = len(rep.residuals)
        rows = [
            {"k": row.k, "r": row.r, "a": row.a, "e": row.e, "ftype": row.f_type, "beta": row.beta, "t": row.t, "family": row.family}
            for row in rep.rows
        ]
        code = EXIT_OK
    print(f"elapsed {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    emit(render(rows, args.format, meta), args.out, sys.stdout)
    return code


COMMANDS = {"mld": cmd_mld, "enc": cmd_enc, "beta": cmd_beta, "gap-scan": cmd_gap_scan, "emld": cmd_emld, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except NotEncError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ENC
    except NotKltError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_KLT
    except (InputError, NotIsolatedError, SemiInvarianceError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
