"""Command-line interface.

Exit codes: 0 success / verified, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .catalog import CodeRecord, coffeepot_code, coffeepot_degenerate_pairs, record_from_group, star_code, table1_regression
from .codesearch import SearchProblem, extract_stabilizer, search
from .gf2 import to_string
from .graphstate import GraphFormatError, load_graph
from .noise import ABSTRACT_PROFILES, DecoderProfile, infidelity_curve, profile_summary, write_curve, write_curve_csv
from .verify import hamming_bound, hamming_bound_single_error, syndrome_table

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def describe_record(rec: CodeRecord, out) -> None:
    g = rec.graph
    print(f"code {rec.name} [[{rec.n},{rec.k},{rec.d};{rec.e}]]", file=out)
    print(f"vertices {g.n_vertices}", file=out)
    print("edges " + " ".join(f"{a}-{b}" for a, b in g.edges()), file=out)
    print(f"pure {to_string(g.pure)}", file=out)
    print("group_generators " + " ".join(to_string(c) for c in rec.generators), file=out)
    for p in rec.stabilizer:
        print(f"stabilizer {p.to_string()}", file=out)
    for r in rec.verification:
        print(f"verify {r.summary()}", file=out)
    for label, syn in syndrome_table(rec.stabilizer, g.noisy):
        print(f"syndrome {label} {syn}", file=out)


def _save(rec: CodeRecord, path: str | None, out) -> None:
    if path:
        rec.save(path)
        print(f"wrote {path}", file=out)


def cmd_search(args, out) -> int:
    g = load_graph(args.graph)
    problem = SearchProblem(g, args.distance, args.mode, args.min_k, maximum_only=args.maximum, limit=args.limit)
    results = search(problem)
    print(f"results {len(results)}", file=out)
    if not results:
        return EXIT_OK
    shown = results if args.all else results[:1]
    for i, res in enumerate(shown):
        if res.is_group:
            gens = " ".join(to_string(c) for c in res.canonical_generators())
            print(f"group {i} k={res.k} generators {gens}", file=out)
            for p in extract_stabilizer(g, res):
                print(f"group {i} stabilizer {p.to_string()}", file=out)
        else:
            print(f"clique {i} K={res.size} members " + " ".join(to_string(c) for c in res.members), file=out)
    if args.out:
        if not results[0].is_group:
            raise UsageError("--out stores stabilizer codes; use --mode group")
        best = results[0]
        rec = record_from_group(
            args.name or Path(args.graph).stem, g, best.canonical_generators(), args.distance,
            f"group search on {args.graph}",
        )
        if not rec.verified:
            print("verification failed; record not written", file=out)
            return EXIT_FAILED
        _save(rec, args.out, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        rec = CodeRecord.load(args.record)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read record {args.record}: {exc}") from exc
    reports = rec.verify(args.oracle)
    for r in reports:
        print(f"verify {r.summary()}", file=out)
    ok = all(r.passed for r in reports)
    print("VERIFIED" if ok else "FAILED", file=out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_family(args, out) -> int:
    rec = star_code(args.n)
    describe_record(rec, out)
    _save(rec, args.out, out)
    return EXIT_OK if rec.verified else EXIT_FAILED


def cmd_coffeepot(args, out) -> int:
    rec = coffeepot_code(use_fixture=not args.rebuild)
    describe_record(rec, out)
    for grp in coffeepot_degenerate_pairs(rec):
        print("shared_syndrome " + " ".join(grp), file=out)
    print(f"provenance {rec.provenance}", file=out)
    _save(rec, args.out, out)
    return EXIT_OK if rec.verified else EXIT_FAILED


def cmd_bound(args, out) -> int:
    b = hamming_bound(args.n, args.k, args.d, args.e)
    print(f"t {b.t}", file=out)
    print(f"lhs {b.lhs}", file=out)
    print(f"rhs {b.rhs}", file=out)
    print(f"violated {'yes' if b.violated else 'no'}", file=out)
    if args.d == 3:
        lhs, rhs = hamming_bound_single_error(args.n, args.k, args.e)
        print(f"single_error_form lhs {lhs} rhs {rhs} violated {'yes' if lhs > rhs else 'no'}", file=out)
    return EXIT_OK


def _load_profile(spec: str, strict: bool):
    if spec in ABSTRACT_PROFILES:
        return ABSTRACT_PROFILES[spec]()
    if spec == "coffeepot":
        return DecoderProfile.from_record(coffeepot_code(), strict)
    try:
        rec = CodeRecord.load(spec)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read record {spec}: {exc}") from exc
    return DecoderProfile.from_record(rec, strict)


def cmd_infidelity(args, out) -> int:
    profiles = [_load_profile(s.strip(), not args.degenerate) for s in args.records.split(",") if s.strip()]
    if not profiles:
        raise UsageError("--records needs at least one entry")
    try:
        rows = infidelity_curve(profiles, args.p_min, args.p_max, args.steps, args.pe_ratio)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    names = [p.name for p in profiles]
    # keep stdout pure CSV when the curve is printed there
    notes = out if args.out else sys.stderr
    for prof in profiles:
        print(f"profile {profile_summary(prof)}", file=notes)
    if args.out:
        write_curve_csv(args.out, names, rows)
        print(f"wrote {args.out} ({len(rows)} rows)", file=out)
    else:
        write_curve(out, names, rows)
    return EXIT_OK


def cmd_table1(args, out) -> int:
    cells = table1_regression()
    for cell in cells:
        print(cell.line(), file=out)
    return EXIT_FAILED if any(c.reproduced is False for c in cells) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eaqec", description="Search, verify and evaluate graph-state entanglement-assisted codes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="search a graph for coding cliques or groups")
    p.add_argument("--graph", required=True)
    p.add_argument("--distance", type=int, required=True)
    p.add_argument("--mode", choices=["group", "clique"], default="group")
    p.add_argument("--min-k", type=int, default=1, help="k in group mode, K in clique mode")
    p.add_argument("--all", action="store_true", help="print every result, not just the first")
    p.add_argument("--maximum", action="store_true", help="keep only maximum-size results")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", help="write the first group as a CodeRecord JSON")
    p.add_argument("--name")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="re-verify a stored CodeRecord")
    p.add_argument("--record", required=True)
    p.add_argument("--oracle", choices=["symplectic", "statevector", "both"], default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="built-in code families")
    p.add_argument("family", choices=["star"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("coffeepot", help="the [[9,5,3;1]] code")
    p.add_argument("--out")
    p.add_argument("--rebuild", action="store_true", help="reconstruct the graph instead of loading the fixture")
    p.set_defaults(func=cmd_coffeepot)

    p = sub.add_parser("bound", help="quantum Hamming bound check")
    for name in ("n", "k", "d", "e"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("infidelity", help="infidelity curves as CSV")
    p.add_argument("--records", required=True, help="comma-separated record files, 'coffeepot' or abstract-10-4-3 / abstract-9-3-3")
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--pe-ratio", type=float, default=1.0)
    p.add_argument("--degenerate", action="store_true", help="credit degenerate corrections beyond weight t")
    p.add_argument("--out")
    p.set_defaults(func=cmd_infidelity)

    p = sub.add_parser("table1", help="regression report against the best-distance table")
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (UsageError, GraphFormatError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
