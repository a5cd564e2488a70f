"""Command-line entry point: scriptable JSON/TSV output, stable columns.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions
from .bounds import (
    BoundQuery,
    FULL_LENGTH,
    NEAR_FULL_LENGTH,
    expected_length,
    integrality,
    kappa,
    lower_bounds,
    upper_bounds,
)
from .bounds.integrality import ModeMismatchError
from .bounds.rules import UPPER_RULES
from .gf import NotPrimePowerError, UnsupportedFieldError
from .projsystem import GmFormatError, RankDeficientError, params, read_gm, write_gm
from .search import SearchConfig, max_length

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _envelope(command: str, result, citations=()) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "result": result,
            "citations": sorted(set(citations)),
        },
        indent=2,
        sort_keys=False,
    )


def _tsv(header: list[str], rows: list[list]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(str(x) for x in row))
    return "\n".join(lines)


def _params_payload(p) -> dict:
    return {
        "n": p.n, "k": p.k, "d": p.d, "d_perp": p.d_perp, "s": p.s, "t": p.t,
        "k_perp": p.k_perp, "projective": p.projective, "degenerate": p.degenerate,
        "griesmer_met": p.griesmer_met,
    }


PARAMS_COLUMNS = ["n", "k", "d", "d_perp", "s", "t", "k_perp", "projective", "degenerate", "griesmer_met"]


def _emit_params(p, fmt: str) -> str:
    payload = _params_payload(p)
    if fmt == "json":
        return _envelope("params", payload)
    return _tsv(PARAMS_COLUMNS, [[payload[c] for c in PARAMS_COLUMNS]])


def cmd_params(args) -> int:
    try:
        ps = read_gm(args.infile)
    except (RankDeficientError, GmFormatError, NotPrimePowerError, UnsupportedFieldError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(_emit_params(params(ps), args.format))
    return 0


def cmd_construct(args) -> int:
    try:
        ps = constructions.build(args.name, k=args.k, q=args.q, s=args.s, degree=args.degree)
    except (ValueError, NotPrimePowerError, UnsupportedFieldError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.out:
        write_gm(ps, args.out)
    p = params(ps)
    payload = {"construction": args.name, "out": args.out, "params": _params_payload(p)}
    if args.format == "json":
        print(_envelope("construct", payload))
    else:
        print(_tsv(["construction", "out"] + PARAMS_COLUMNS,
                   [[args.name, args.out or ""] + [_params_payload(p)[c] for c in PARAMS_COLUMNS]]))
    return 0


BOUND_COLUMNS = ["rule_id", "direction", "target", "value", "binding", "citation", "conditions"]


def _bound_rows(results) -> list[list]:
    return [
        [r.rule_id, r.direction, r.target, r.value, r.binding,
         r.citation, "; ".join(r.conditions_used) + (f" [witness {r.witness}]" if r.witness else "")]
        for r in results
    ]


def cmd_bounds(args) -> int:
    if args.table:
        return _cmd_bounds_table(args)
    if args.k is None or args.q is None or args.s is None:
        print("error: bounds needs --k, --q, --s (or --table)", file=sys.stderr)
        return 2
    try:
        query = BoundQuery(k=args.k, q=args.q, s=args.s, t=args.t, d=args.d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    uppers = upper_bounds(query)
    lowers = lower_bounds(query)
    results = uppers + lowers
    if args.format == "json":
        payload = {
            "query": {"k": args.k, "q": args.q, "s": args.s, "t": args.t, "d": args.d},
            "bounds": [
                {
                    "rule_id": r.rule_id, "direction": r.direction, "target": r.target,
                    "value": r.value, "binding": r.binding, "citation": r.citation,
                    "conditions": list(r.conditions_used), "witness": r.witness,
                }
                for r in results
            ],
        }
        print(_envelope("bounds", payload, [r.citation for r in results]))
    else:
        print(_tsv(BOUND_COLUMNS, _bound_rows(results)))
    return 0


def _parse_range(spec: str) -> dict[str, range]:
    out = {}
    for part in spec.split(","):
        name, _, span = part.partition("=")
        lo, _, hi = span.partition("..")
        lo_i = int(lo)
        out[name.strip()] = range(lo_i, int(hi) + 1 if hi else lo_i + 1)
    return out


def _cmd_bounds_table(args) -> int:
    t_specific_ids = {
        "dual_amds_cap", "dual_dim_cap", "dual_len_cap", "nmds_len", "nmds_q_gt_3",
        "nmds_extremal_k", "nmds_k_gt_2q", "nsmds_len", "nsmds_dim", "dual_mds_embed",
        "dual_secant_embed", "big_k_t1", "big_k_ts", "big_d_t2", "amds_no_k_s1",
        "amds_no_k_sgt1", "amds_dual_bound", "amds_dual_big_t", "amds_dual_mds_exact",
        "t3_planar_reduction", "dual_defect_chain", "weight_gap",
    }
    want_t = args.table == 4
    if not args.range:
        rows = [
            [rule.rule_id, rule.target, rule.citation]
            for rule in UPPER_RULES
            if (rule.rule_id in t_specific_ids) == want_t
        ]
        if args.format == "json":
            payload = {"table": args.table,
                       "rules": [{"rule_id": r[0], "target": r[1], "citation": r[2]} for r in rows]}
            print(_envelope("bounds", payload, [r[2] for r in rows]))
        else:
            print(_tsv(["rule_id", "target", "citation"], rows))
        return 0
    ranges = _parse_range(args.range)
    ks = ranges.get("k", range(3, 7))
    qs = ranges.get("q", range(2, 10))
    ss = ranges.get("s", range(0, 4))
    ts = ranges.get("t", range(1, 4)) if want_t else [None]
    rows = []
    for q in qs:
        from .gf import is_prime_power

        if not is_prime_power(q):
            continue
        for k in ks:
            for s in ss:
                for t in ts:
                    query = BoundQuery(k=k, q=q, s=s, t=t)
                    fired = [r for r in upper_bounds(query) if r.target == "n"]
                    if not fired:
                        continue
                    best = fired[0]
                    rows.append([k, q, s, "" if t is None else t, best.value, best.rule_id,
                                 " ".join(r.rule_id for r in fired)])
    header = ["k", "q", "s", "t", "min_bound", "binding_rule", "fired_rules"]
    if args.format == "json":
        payload = {"table": args.table, "cells": [dict(zip(header, row)) for row in rows]}
        print(_envelope("bounds", payload))
    else:
        print(_tsv(header, rows))
    return 0


def cmd_integrality(args) -> int:
    mode = args.mode
    if mode is None:
        mode = FULL_LENGTH if args.n == expected_length(args.k, args.q, args.s, FULL_LENGTH) else NEAR_FULL_LENGTH
    try:
        reports = integrality(args.n, args.k, args.q, args.s, mode)
    except (ModeMismatchError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    rows = []
    for rep in reports:
        if mode == FULL_LENGTH:
            rows.append([rep.j, f"{rep.gamma_raw[0]}/{rep.gamma_raw[1]}", str(rep.gamma),
                         rep.gamma_integer, "", "", ""])
        else:
            rows.append([rep.j, "", "", "",
                         f"{rep.alpha_raw[0]}/{rep.alpha_raw[1]}",
                         f"{rep.beta_raw[0]}/{rep.beta_raw[1]}",
                         rep.alpha_integer and rep.beta_integer])
    header = ["j", "gamma", "gamma_reduced", "gamma_integer", "alpha", "beta", "alpha_beta_integer"]
    if args.format == "json":
        payload = {
            "n": args.n, "k": args.k, "q": args.q, "s": args.s, "mode": mode,
            "reports": [
                {
                    "j": rep.j,
                    "gamma": None if rep.gamma_raw is None else f"{rep.gamma_raw[0]}/{rep.gamma_raw[1]}",
                    "gamma_integer": rep.gamma_integer,
                    "alpha": None if rep.alpha_raw is None else f"{rep.alpha_raw[0]}/{rep.alpha_raw[1]}",
                    "alpha_integer": rep.alpha_integer,
                    "beta": None if rep.beta_raw is None else f"{rep.beta_raw[0]}/{rep.beta_raw[1]}",
                    "beta_integer": rep.beta_integer,
                    "all_integer": rep.all_integer,
                }
                for rep in reports
            ],
            "nonexistence_certified": any(not rep.all_integer for rep in reports),
        }
        print(_envelope("integrality", payload, ["secant and tangent count integralities"]))
    else:
        print(_tsv(header, rows))
    return 0


def cmd_kappa(args) -> int:
    budget = args.budget if args.search else None
    entry = kappa(args.s, args.q, search_budget=budget)
    payload = {
        "s": entry.s, "q": entry.q, "lower": entry.lower, "upper": entry.upper,
        "status": entry.status, "witness": entry.witness, "upper_rule": entry.upper_rule,
        "note": entry.note,
        "search_outcomes": [{"k": k, "outcome": o} for k, o in entry.search_outcomes],
    }
    if args.format == "json":
        print(_envelope("kappa", payload))
    else:
        header = ["s", "q", "lower", "upper", "status", "witness", "upper_rule", "note"]
        print(_tsv(header, [[entry.s, entry.q, entry.lower,
                             "" if entry.upper is None else entry.upper,
                             entry.status, entry.witness or "", entry.upper_rule or "",
                             entry.note or ""]]))
    return 0


def cmd_search(args) -> int:
    config = SearchConfig(k=args.k, q=args.q, s=args.s, budget=args.budget, threads=args.threads)
    try:
        cert = max_length(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    witness_file = None
    if args.out and cert.witness is not None:
        write_gm(cert.witness, args.out)
        witness_file = args.out
    payload = {
        "n_max": cert.n_max,
        "exhaustive": cert.exhaustive,
        "nodes": cert.nodes,
        "witness_file": witness_file,
        "rules_used": list(cert.rules_used),
    }
    if args.format == "json":
        print(_envelope("search", payload))
    else:
        print(_tsv(["n_max", "exhaustive", "nodes", "witness_file", "rules_used"],
                   [[cert.n_max, cert.exhaustive, cert.nodes, witness_file or "",
                     " ".join(cert.rules_used)]]))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(seed=args.seed)
    failures = [r for r in results if not r.passed]
    if args.format == "json":
        payload = {
            "suite": args.suite,
            "seed": args.seed,
            "passed": len(results) - len(failures),
            "failed": len(failures),
            "checks": [
                {"criterion": r.criterion, "name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        }
        print(_envelope("verify", payload))
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark}\tcriterion {r.criterion}\t{r.name}\t{r.detail}")
        print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projsys",
        description="Linear codes as projective systems: parameters, bounds, constructions, search.",
    )
    parser.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized property checks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="read a .gm file and print the code parameters")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("construct", parents=[common], help="emit a catalog construction as a .gm file")
    p.add_argument("name", choices=sorted(constructions.CATALOG))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("bounds", parents=[common], help="fire all applicable length bounds for a query")
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--table", type=int, choices=(3, 4), help="emit the rule catalog instead")
    p.add_argument("--range", help="grid like k=3..6,q=2..9,s=0..3 for --table")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("integrality", parents=[common], help="exact secant/tangent count ratios at extremal lengths")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--mode", choices=(FULL_LENGTH, NEAR_FULL_LENGTH))
    p.set_defaults(fn=cmd_integrality)

    p = sub.add_parser("kappa", parents=[common], help="bracket the largest extremal-length dimension")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--search", action="store_true", help="close gaps with exhaustive search")
    p.add_argument("--budget", type=int, default=10**7)
    p.set_defaults(fn=cmd_kappa)

    p = sub.add_parser("search", parents=[common], help="certified maximum multi-arc length")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--threads", type=int, default=0)
    p.add_argument("--out", help="write the witness generator matrix here")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    p.add_argument("--suite", default="paper-tables", choices=("paper-tables",))
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not hasattr(args, "format"):
        args.format = "json"
    if not hasattr(args, "seed"):
        args.seed = 0
    if "PROJSYS_THREADS" in os.environ and getattr(args, "threads", None) == 0:
        args.threads = int(os.environ["PROJSYS_THREADS"])
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
