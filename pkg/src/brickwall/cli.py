"""``brick`` command-line interface.

Exit codes: 0 success, 1 computational mismatch or resource guard, 2 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from typing import Optional, Sequence

from . import oeis
from .lattice import (
    EnumerationLimitExceeded,
    Kind,
    LatticeSpec,
    count_paths_bruteforce,
    enumerate_paths,
    iter_paths,
)
from .reliability import (
    DEFAULT_MAX_STATES,
    StateGuardExceeded,
    analytic_report,
    brute_force_Ntable,
    build_network,
    eval_polynomial,
    first_coefficient,
    monte_carlo_estimate,
    n_to_p,
    second_coefficient,
)
from .sequences import Table1Row, closed_form_w3, closed_form_w4, sequence_for, table1_reference
from .transfer import column_matrix, count_paths, paper_matrix, theorem_count, to_top_down, transition_matrix

DEFAULT_PATH_GUARD = 100_000


class Mismatch(Exception):
    """A computational cross-check failed (exit 1)."""


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _note(text: str) -> None:
    sys.stderr.write(text + "\n")


def _spec(args, parser) -> LatticeSpec:
    try:
        spec = LatticeSpec(args.length, args.width, args.type or 1)
    except ValueError as exc:
        parser.error(str(exc))
    if args.type is not None and spec.width % 2 == 1:
        _note(f"note: width {spec.width} is odd; both lattice types give the same counts")
    return spec


def _json(obj) -> str:
    return json.dumps(obj, indent=2)


def cmd_count(args, parser) -> int:
    spec = _spec(args, parser)
    n = count_paths(spec)
    if args.oracle:
        bf = count_paths_bruteforce(spec, args.max_paths)
        if bf != n:
            raise Mismatch(f"transfer count {n} != brute-force count {bf} for {spec}")
    if args.format == "json":
        _emit(_json({"w": spec.width, "l": spec.length, "kind": int(spec.kind), "count": str(n)}))
    else:
        _emit(str(n))
    return 0


def cmd_paths(args, parser) -> int:
    spec = _spec(args, parser)
    guard = args.limit if args.limit is not None else DEFAULT_PATH_GUARD
    truncated = False
    try:
        paths = enumerate_paths(spec, limit=guard)
    except EnumerationLimitExceeded:
        if args.limit is None:
            _note(f"error: more than {guard} paths; pass --limit N to print a truncated listing")
            return 1
        truncated = True
        paths = list(itertools.islice(iter_paths(spec), guard))
    if args.format == "json":
        _emit(_json({"w": spec.width, "l": spec.length, "kind": int(spec.kind),
                     "truncated": truncated, "paths": [p.to_record() for p in paths]}))
    else:
        for p in paths:
            _emit(str(p))
    if truncated:
        _note(f"warning: output truncated after {guard} paths")
        return 1
    return 0


def _find_row(w: int, kind: Kind) -> Optional[Table1Row]:
    for row in table1_reference():
        if row.width == w and (row.kind is None or row.kind is kind):
            return row
    return None


def cmd_seq(args, parser) -> int:
    try:
        LatticeSpec(max(args.max_length, 1), args.width, args.type or 1)
    except ValueError as exc:
        parser.error(str(exc))
    if args.min_length < 1 or args.max_length < args.min_length:
        parser.error("length range must satisfy 1 <= --min-length <= --max-length")
    if args.type is not None and args.width % 2:
        _note(f"note: width {args.width} is odd; both lattice types give the same counts")
    kind = Kind(args.type or 1)
    lengths = range(args.min_length, args.max_length + 1)
    terms = sequence_for(args.width, kind, args.max_length, args.min_length)
    if args.check or args.oeis:
        _check_sequence(args, kind, lengths, terms)
    if args.format == "json":
        _emit(_json({"w": args.width, "kind": int(kind), "l_min": args.min_length, "terms": [str(t) for t in terms]}))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["l", "count"])
        writer.writerows(zip(lengths, terms))
        sys.stdout.write(buf.getvalue())
    else:
        _emit(",".join(map(str, terms)))
    return 0


def _check_sequence(args, kind, lengths, terms) -> None:
    w = args.width
    if args.check:
        for l, t in zip(lengths, terms):
            if w == 3 and closed_form_w3(l) != t:
                raise Mismatch(f"l={l}: count {t} != F(l+3) = {closed_form_w3(l)}")
            if w == 4 and closed_form_w4(l, kind) != t:
                raise Mismatch(f"l={l}: count {t} != closed form {closed_form_w4(l, kind)}")
            if l >= 2:
                th = theorem_count(LatticeSpec(l, w, kind))
                if th != t:
                    raise Mismatch(f"l={l}: count {t} != matrix-power form {th}")
    if args.oeis:
        row = _find_row(w, kind)
        if row is None:
            raise Mismatch(f"no OEIS id recorded for width {w}, type {int(kind)}")
        seq = oeis.get_sequence(row.oeis_id, allow_network=not args.offline)
        match = oeis.compare_prefix(terms, seq)
        if not match.matched:
            raise Mismatch(f"terms not found as a contiguous run of {row.oeis_id} ({seq.source.value})")
        _note(f"{row.oeis_id}: matched at offset {match.offset} ({seq.source.value})")


def cmd_matrix(args, parser) -> int:
    try:
        if args.name:
            m = paper_matrix(args.name, args.width).dense()
        else:
            spec = LatticeSpec(args.length, args.width, args.type or 1)
            m = column_matrix(spec, args.column).dense() if args.column else transition_matrix(spec)
    except ValueError as exc:
        parser.error(str(exc))
    rows = to_top_down(m)
    if args.format == "json":
        _emit(_json({"orientation": "top-down", "rows": [[str(x) for x in r] for r in rows]}))
    else:
        width = max(len(str(x)) for r in rows for x in r)
        for r in rows:
            _emit(" ".join(str(x).rjust(width) for x in r))
    return 0


def _rel_spec(args, parser) -> LatticeSpec:
    spec = _spec(args, parser)
    if spec.length < 2:
        parser.error("reliability needs --length >= 2")
    return spec


def cmd_rel_coeffs(args, parser) -> int:
    spec = _rel_spec(args, parser)
    report = analytic_report(spec)
    if args.format == "text":
        _emit(f"P_{spec.length} = {report.P_l}\nP_{spec.length + 1} = {report.P_l1}")
    else:
        _emit(_json(report.to_json()))
    return 0


def cmd_rel_table(args, parser) -> int:
    spec = _rel_spec(args, parser)
    n = brute_force_Ntable(build_network(spec), args.max_states)
    p = n_to_p(n)
    if args.format == "json":
        _emit(_json({"w": spec.width, "l": spec.length, "kind": int(spec.kind), "m": len(n) - 1,
                     "N": [str(x) for x in n], "P": [str(x) for x in p], "method": "bruteforce"}))
    else:
        _emit("N: " + ",".join(map(str, n)))
        _emit("P: " + ",".join(map(str, p)))
    return 0


def cmd_rel_mc(args, parser) -> int:
    spec = _rel_spec(args, parser)
    if not 0.0 <= args.p <= 1.0:
        parser.error("--p must lie in [0, 1]")
    if args.trials < 1 or args.workers < 1:
        parser.error("--trials and --workers must be positive")
    net = build_network(spec)
    res = monte_carlo_estimate(net, args.p, args.trials, args.seed, args.workers)
    out = {"w": spec.width, "l": spec.length, "kind": int(spec.kind), "p": args.p, "trials": res.trials,
           "seed": args.seed, "workers": args.workers, "estimate": res.estimate, "standard_error": res.standard_error}
    if args.exact:
        exact = eval_polynomial(n_to_p(brute_force_Ntable(net, args.max_states)), args.p)
        out["exact"] = float(exact)
        out["z"] = (res.estimate - float(exact)) / res.standard_error if res.standard_error else 0.0
    if args.format == "text":
        _emit(f"{res.estimate:.6f} +- {res.standard_error:.6f} ({res.trials} trials)")
    else:
        _emit(_json(out))
    return 0


def cmd_verify(args, parser) -> int:
    checked = 0
    for w in range(2, args.max_width + 1):
        for l in range(1, args.max_length + 1):
            for kind in Kind:
                spec = LatticeSpec(l, w, kind)
                n = count_paths(spec)
                bf = count_paths_bruteforce(spec)
                if n != bf:
                    raise Mismatch(f"{spec}: transfer {n} != brute force {bf}")
                if l >= 2 and theorem_count(spec) != n:
                    raise Mismatch(f"{spec}: matrix-power form {theorem_count(spec)} != {n}")
                checked += 1
                if l >= 2 and w * l <= args.max_relays:
                    p = n_to_p(brute_force_Ntable(build_network(spec)))
                    if (p[l], p[l + 1]) != (first_coefficient(spec), second_coefficient(spec)):
                        raise Mismatch(f"{spec}: reliability coefficients {p[l]}, {p[l + 1]} disagree with analytic")
    _emit(f"ok: {checked} instances checked")
    return 0


def _load_rows(path: Optional[str]) -> list[Table1Row]:
    if path is None:
        return table1_reference()
    with open(path) as fh:
        raw = json.load(fh)
    return [Table1Row(int(r["width"]), Kind(r["kind"]) if r.get("kind") else None,
                      tuple(int(t) for t in r["terms"]), r["oeis_id"], int(r.get("alignment_offset", 0)))
            for r in raw]


def cmd_table1(args, parser) -> int:
    rows = _load_rows(args.fixture)
    diffs = []
    lines = []
    for row in rows:
        computed = [sequence_for(row.width, kind, len(row.terms)) for kind in row.kinds()]
        for kind, got in zip(row.kinds(), computed):
            for l, (a, b) in enumerate(zip(got, row.terms), start=1):
                if a != b:
                    diffs.append(f"{row.label} type {int(kind)} l={l}: computed {a}, expected {b}")
        got = computed[0]
        status = ""
        if args.check_oeis:
            seq = oeis.get_sequence(row.oeis_id, allow_network=not args.offline)
            match = oeis.compare_prefix(got, seq)
            if not match.matched:
                diffs.append(f"{row.label}: not found in {row.oeis_id} ({seq.source.value})")
            status = f"  offset={match.offset} ({seq.source.value})"
        lines.append(f"{row.label:<10} {', '.join(map(str, got)):<38} {row.oeis_id}{status}")
    _emit("\n".join(lines))
    if diffs:
        for d in diffs:
            _note("MISMATCH " + d)
        return 1
    return 0


def cmd_oeis_fetch(args, parser) -> int:
    seq = oeis.fetch_sequence(args.id)
    _emit(f"{seq.id}: {len(seq.terms)} terms cached in {oeis.cache_dir()}")
    return 0


def cmd_oeis_show(args, parser) -> int:
    seq = oeis.get_sequence(args.id, allow_network=not args.offline)
    _emit(f"{seq.id} ({seq.source.value}): " + ",".join(map(str, seq.terms)))
    return 0


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brick", description="Brick-wall lattice paths and hammock reliability.")
    sub = parser.add_subparsers(dest="command", required=True)

    def lattice_args(p, length=True, formats=("text", "json")):
        p.add_argument("--width", "-w", type=int, required=True)
        if length:
            p.add_argument("--length", "-l", type=int, required=True)
        p.add_argument("--type", "-t", type=int, choices=(1, 2), default=None, help="lattice type (default 1)")
        p.add_argument("--format", choices=formats, default=formats[0])

    p = sub.add_parser("count", help="number of paths")
    lattice_args(p)
    p.add_argument("--oracle", action="store_true", help="also count by exhaustive enumeration")
    p.add_argument("--max-paths", type=_positive_int, default=10_000_000)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("paths", help="list paths in canonical order")
    lattice_args(p)
    p.add_argument("--limit", type=_positive_int)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("seq", help="counts for a range of lengths")
    lattice_args(p, length=False, formats=("text", "json", "csv"))
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--min-length", type=int, default=1)
    p.add_argument("--check", action="store_true", help="cross-check closed forms")
    p.add_argument("--oeis", action="store_true", help="cross-check against OEIS")
    p.add_argument("--offline", action="store_true")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("matrix", help="dense transfer matrix, top row first")
    p.add_argument("--width", "-w", type=int, required=True)
    p.add_argument("--length", "-l", type=int, default=2)
    p.add_argument("--type", "-t", type=int, choices=(1, 2), default=None)
    p.add_argument("--column", type=int, help="single column matrix instead of the full product")
    p.add_argument("--name", choices=("MU", "ML", "Mminus", "Mplus"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_matrix)

    rel = sub.add_parser("rel", help="hammock network reliability").add_subparsers(dest="rel_command", required=True)
    p = rel.add_parser("coeffs", help="analytic P_l and P_{l+1}")
    lattice_args(p, formats=("json", "text"))
    p.set_defaults(func=cmd_rel_coeffs)
    p = rel.add_parser("table", help="full N and P tables by brute force")
    lattice_args(p)
    p.add_argument("--max-states", type=_positive_int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_rel_table)
    p = rel.add_parser("mc", help="Monte Carlo reliability estimate")
    lattice_args(p, formats=("json", "text"))
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="also compute the exact value by brute force")
    p.add_argument("--max-states", type=_positive_int, default=DEFAULT_MAX_STATES)
    p.set_defaults(func=cmd_rel_mc)

    p = sub.add_parser("verify", help="sweep all cross-checks over a grid")
    p.add_argument("--max-width", type=int, default=6)
    p.add_argument("--max-length", type=int, default=8)
    p.add_argument("--max-relays", type=int, default=16, help="brute-force reliability when w*l is at most this")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table1", help="recompute the width table and diff against the fixture")
    p.add_argument("--fixture", help="JSON file overriding the embedded rows")
    p.add_argument("--check-oeis", action="store_true")
    p.add_argument("--offline", action="store_true")
    p.set_defaults(func=cmd_table1)

    oe = sub.add_parser("oeis", help="OEIS cache management").add_subparsers(dest="oeis_command", required=True)
    p = oe.add_parser("fetch")
    p.add_argument("id")
    p.set_defaults(func=cmd_oeis_fetch)
    p = oe.add_parser("show")
    p.add_argument("id")
    p.add_argument("--offline", action="store_true")
    p.set_defaults(func=cmd_oeis_show)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except Mismatch as exc:
        _note(f"MISMATCH: {exc}")
        return 1
    except (StateGuardExceeded, EnumerationLimitExceeded) as exc:
        _note(f"error: {exc}")
        return 1
    except oeis.OeisError as exc:
        _note(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
