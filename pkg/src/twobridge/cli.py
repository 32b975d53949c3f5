"""Command-line surface.

Every subcommand maps to one library operation and prints deterministic
output: no timestamps, scan progress on stderr only, numbers exact
(fractions as "p/q", quarter counts as decimals with .25 granularity,
or as "m/4" strings in JSON).  Exit codes: 0 success, 1 mathematical
finding of interest (failed check, scan counterexample candidate,
unequal crosscheck), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import isqrt

from . import enumeration, families
from .casson_gordon import cg_condition, weighted_count
from .conway import cf_eval, cf_expand, parse_fraction, parse_word
from .errors import DomainError, InternalError

__all__ = ["main", "execute", "build_parser"]


def _halves_str(halves: int) -> str:
    whole, rem = divmod(halves, 2)
    return str(whole) if rem == 0 else f"{whole}.5"


def _quarters_str(quarters: int) -> str:
    whole, rem = divmod(quarters, 4)
    return str(whole) + {0: "", 1: ".25", 2: ".5", 3: ".75"}[rem]


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twobridge",
        description="2-bridge knot fractions, the Casson-Gordon ribbon obstruction, "
        "and the known ribbon families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sigma", help="sigma(p, q, r) with area and weighted count")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--r", type=int, default=None, help="single r (default: all r = 1..p-1)")
    g.add_argument("--all", action="store_true", help="all r = 1..p-1 (the default)")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("cg-check", help="Casson-Gordon condition for the knot p^2/q")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--format", choices=("text", "json"), default="text")

    for name, help_ in (
        ("member", "membership of p^2/q in the known ribbon families"),
        ("partial", "partial knot of the family member p^2/q"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("p", type=int, help="p (or the determinant p^2 with --det)")
        s.add_argument("q", type=int)
        s.add_argument(
            "--det",
            action="store_true",
            help="interpret the first argument as the determinant (an odd perfect square)",
        )
        s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("generate", help="build a family word and its fraction")
    s.add_argument("--family", required=True, choices=("0", "1", "2"))
    s.add_argument("--params", required=True, help="comma-separated integers, e.g. 1,-2")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("eval", help='evaluate a Conway word like "C(2,1,3)"')
    s.add_argument("word")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("expand", help="all-positive Conway expansion of p/q")
    s.add_argument("fraction", metavar="p/q")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("table", help="ribbon-knot counts per crossing number")
    s.add_argument("--max-crossing", type=int, required=True)
    s.add_argument("--format", choices=("text", "csv", "json"), default="text")

    s = sub.add_parser("scan", help="conjecture-verification scan over determinants")
    s.add_argument("--min-p", type=int, required=True)
    s.add_argument("--max-p", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    s.add_argument("--checkpoint", default=None, help="JSONL checkpoint file (resumable)")
    s.add_argument("--audit", action="store_true", help="test every q, not one per orbit")
    s.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("crosscheck", help="amphicheiral counts vs family-0 counts at c+2")
    s.add_argument("--max-crossing", type=int, required=True)
    s.add_argument("--format", choices=("text", "csv", "json"), default="text")

    return parser


def _cmd_sigma(args) -> int:
    rs = [args.r] if args.r is not None else range(1, args.p)
    terms = []
    for r in rs:
        quarters = weighted_count(args.p, args.q, r)
        area_halves = args.q * r * r
        terms.append((r, area_halves, quarters, 2 * area_halves - quarters))
    if args.format == "json":
        _print_json(
            {
                "p": args.p,
                "q": args.q,
                "terms": [
                    {"r": r, "area": f"{ah}/2", "int": f"{qt}/4", "sigma": s}
                    for r, ah, qt, s in terms
                ],
            }
        )
    else:
        for r, ah, qt, s in terms:
            print(f"r={r} area={_halves_str(ah)} int={_quarters_str(qt)} sigma={s}")
    return 0


def _cmd_cg_check(args) -> int:
    report = cg_condition(args.p, args.q, early_exit=False)
    if args.format == "json":
        _print_json(report.to_json_dict())
    elif report.passes:
        print(f"PASS {args.p * args.p}/{args.q}: sigma = +-1 for all r = 1..{args.p - 1}")
    else:
        t = report.terms[report.first_failure - 1]
        print(f"FAIL {args.p * args.p}/{args.q} at r={t.r}: sigma={t.sigma}")
    return 0 if report.passes else 1


def _resolve_pq(args) -> tuple[int, int]:
    if args.det:
        det = args.p
        p = isqrt(det)
        if p * p != det or det % 2 == 0:
            raise DomainError(f"determinant {det} is not an odd perfect square")
        return p, args.q
    return args.p, args.q


def _cmd_member(args) -> int:
    p, q = _resolve_pq(args)
    mem = families.is_family_member(p, q)
    if args.format == "json":
        _print_json(mem.to_json_dict())
    else:
        print(f"knot {p * p}/{q} (p={p}, q={q})")
        print(f"member: {'yes' if mem.member else 'no'}")
        if mem.member:
            if mem.families:
                print("families: " + ",".join(str(f) for f in sorted(mem.families)))
            print(
                "conditions: "
                + "; ".join(f"{m} [q={m.q_rep}]" for m in mem.matches)
            )
            print(f"partial: {mem.partial.canonical}")
    return 0


def _cmd_partial(args) -> int:
    p, q = _resolve_pq(args)
    cls = families.partial_knot(p, q)
    if args.format == "json":
        _print_json(
            {
                "p": p,
                "q": q,
                "partial": str(cls.canonical),
                "determinant": cls.determinant,
                "crossing": cls.crossing,
            }
        )
    else:
        print(f"partial knot: {cls.canonical} (determinant {cls.determinant}, crossing {cls.crossing})")
    return 0


def _cmd_generate(args) -> int:
    try:
        params = [int(tok) for tok in args.params.split(",")]
    except ValueError as exc:
        raise DomainError(f"cannot parse --params {args.params!r}") from exc
    word, frac = families.generate(int(args.family), params)
    if args.format == "json":
        _print_json(
            {
                "family": args.family,
                "params": params,
                "word": str(word),
                "fraction": str(frac),
                "link": frac.is_link,
            }
        )
    else:
        print(f"{word} = {frac}" + (" (link)" if frac.is_link else ""))
    return 0


def _cmd_eval(args) -> int:
    word = parse_word(args.word)
    frac = cf_eval(word)
    if args.format == "json":
        _print_json({"word": str(word), "fraction": str(frac), "link": frac.is_link})
    else:
        print(str(frac) + (" (link)" if frac.is_link else ""))
    return 0


def _cmd_expand(args) -> int:
    frac = parse_fraction(args.fraction, allow_even=True)
    word = cf_expand(frac)
    if args.format == "json":
        _print_json({"fraction": str(frac), "word": str(word)})
    else:
        print(str(word))
    return 0


def _cmd_table(args) -> int:
    rows = enumeration.ribbon_table(args.max_crossing)
    if args.format == "json":
        _print_json([row.to_json_dict() for row in rows])
    elif args.format == "csv":
        print("crossing,family0,family1,family2,total")
        for row in rows:
            print(f"{row.crossing},{row.family0},{row.family1},{row.family2},{row.total}")
    else:
        print(f"{'crossing':>8} {'family0':>8} {'family1':>8} {'family2':>8} {'total':>6}")
        for row in rows:
            print(
                f"{row.crossing:>8} {row.family0:>8} {row.family1:>8} "
                f"{row.family2:>8} {row.total:>6}"
            )
    return 0


def _cmd_scan(args) -> int:
    jobs = args.jobs if args.jobs is not None else enumeration.default_jobs()

    def progress(rec):
        print(f"scan: p={rec.p} done", file=sys.stderr)

    records = enumeration.conjecture_scan(
        args.min_p,
        args.max_p,
        checkpoint=args.checkpoint,
        jobs=jobs,
        audit=args.audit,
        progress=progress,
    )
    candidates = [(rec.p, q) for rec in records for q in rec.non_family]
    if args.format == "json":
        for rec in records:
            print(rec.to_json_line())
    else:
        for rec in records:
            print(
                f"p={rec.p}: tested={rec.q_tested} passing={len(rec.cg_passing)} "
                f"non_family={len(rec.non_family)}"
            )
        if candidates:
            print("COUNTEREXAMPLE CANDIDATES (cg-passing, outside all families):")
            for p, q in candidates:
                print(f"  p={p} q={q}  (inspect with: twobridge cg-check {p} {q})")
        else:
            print(f"no counterexample candidates for p = {records[0].p}..{records[-1].p}")
    return 1 if candidates else 0


def _cmd_crosscheck(args) -> int:
    rows = enumeration.amphicheiral_crosscheck(args.max_crossing)
    if args.format == "json":
        _print_json([row.to_json_dict() for row in rows])
    elif args.format == "csv":
        print("crossing,amphicheiral,family0_at_crossing_plus_2,equal")
        for row in rows:
            print(f"{row.crossing},{row.amphicheiral},{row.family0_at_next},{str(row.equal).lower()}")
    else:
        for row in rows:
            print(
                f"c={row.crossing}: amphicheiral={row.amphicheiral}, "
                f"family0(c+2)={row.family0_at_next}, equal={'yes' if row.equal else 'NO'}"
            )
    return 0 if all(row.equal for row in rows) else 1


_HANDLERS = {
    "sigma": _cmd_sigma,
    "cg-check": _cmd_cg_check,
    "member": _cmd_member,
    "partial": _cmd_partial,
    "generate": _cmd_generate,
    "eval": _cmd_eval,
    "expand": _cmd_expand,
    "table": _cmd_table,
    "scan": _cmd_scan,
    "crosscheck": _cmd_crosscheck,
}


def execute(argv: list[str] | None = None) -> int:
    """Parse argv and run the mapped operation; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(execute())
