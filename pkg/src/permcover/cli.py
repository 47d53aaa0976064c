"""Command-line front end.

Every invocation emits exactly one run manifest (command, parameters,
library version, thread count, wall time, result payload) as JSON.  With
--format csv the tabular payload goes to stdout byte-stably and the
manifest moves to stderr.

Exit codes: 0 success, 2 validation error, 3 infeasibility, 4 internal
verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .exposure import aset, window_sets
from .formulas import (
    dn_bounds,
    dn_weak_lower,
    lmax_cyclic,
    lmax_pq,
    lmax_product,
    lmin_cyclic_lower,
    r_cyclic,
    r_pq,
    r_product,
)
from .groups import GroupCode, blocks, code_from_descriptor, make_dihedral
from .perms import format_perm, parse_perm
from .solver import (
    DegreeCapError,
    radius_auto,
    radius_bruteforce,
    radius_restricted,
    relabel_extrema,
)
from .witnesses import (
    WitnessVerificationError,
    witness_dn,
    witness_dn_refined,
    witness_lmax,
    witness_pq,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFICATION = 4

TABLE1_SOFT_LIMIT = 20


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


def _parse_code(text: str) -> GroupCode:
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"--code is not valid JSON: {exc}")
    try:
        return code_from_descriptor(desc)
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"bad code descriptor: {exc}")


def _dn_annotation(n: int, value: int) -> str:
    b = dn_bounds(n)
    if not b.contains(value):
        raise CliError(
            f"computed r(D_{n}) = {value} escapes its proven bounds "
            f"[{b.lower},{b.upper}]",
            EXIT_VERIFICATION,
        )
    if b.exact is not None:
        return "e"
    return "u" if value == b.upper else "l"


def cmd_formulas(args: argparse.Namespace) -> dict:
    query = args.query
    if query == "r_cyclic":
        return {"query": query, "n": args.n, "value": r_cyclic(_need(args, "n"))}
    if query == "lmax_cyclic":
        return {"query": query, "n": args.n, "value": lmax_cyclic(_need(args, "n"))}
    if query == "r_pq":
        return {"query": query, "p": args.p, "q": args.q,
                "value": r_pq(_need(args, "p"), _need(args, "q"))}
    if query == "lmax_pq":
        return {"query": query, "p": args.p, "q": args.q,
                "value": lmax_pq(_need(args, "p"), _need(args, "q"))}
    if query == "r_product":
        parts = _need_parts(args)
        return {"query": query, "parts": list(parts), "value": r_product(parts)}
    if query == "lmax_product":
        parts = _need_parts(args)
        return {"query": query, "parts": list(parts), "value": lmax_product(parts)}
    if query == "dn_bounds":
        b = dn_bounds(_need(args, "n"))
        return {"query": query, "n": args.n,
                "lower": b.lower, "upper": b.upper, "exact": b.exact}
    if query == "dn_weak_lower":
        return {"query": query, "n": args.n, "value": dn_weak_lower(_need(args, "n"))}
    if query == "lmin_cyclic_lower":
        return {"query": query, "n": args.n,
                "value": lmin_cyclic_lower(_need(args, "n"))}
    raise CliError(f"unknown query {query!r}")


def _need(args: argparse.Namespace, name: str) -> int:
    value = getattr(args, name, None)
    if value is None:
        raise CliError(f"--{name} is required for --query {args.query}")
    return value


def _need_parts(args: argparse.Namespace) -> tuple[int, ...]:
    if not args.parts:
        raise CliError(f"--parts is required for --query {args.query}")
    try:
        return tuple(int(x) for x in args.parts.split(","))
    except ValueError:
        raise CliError(f"--parts must be comma-separated integers, got {args.parts!r}")


def cmd_witness(args: argparse.Namespace) -> dict:
    family = args.family
    if family == "pq":
        bundle = witness_pq(_need(args, "p"), _need(args, "q"))
    elif family == "lmax":
        bundle = witness_lmax(_need(args, "p"), _need(args, "q"))
    elif family == "dn":
        bundle = witness_dn(_need(args, "n"))
    elif family == "dn-refined":
        bundle = witness_dn_refined(_need(args, "n"))
    else:
        raise CliError(f"unknown family {family!r}")
    payload = bundle.to_json_dict()
    if not payload["verified"]:
        raise CliError("witness failed verification", EXIT_VERIFICATION)
    if not args.report:
        payload.pop("report")
    return payload


def cmd_radius(args: argparse.Namespace) -> dict:
    code = _parse_code(args.code)
    try:
        if args.method == "bruteforce":
            result = radius_bruteforce(code, force=args.force)
        elif args.method == "restricted":
            if args.rtilde is None:
                raise CliError("--rtilde is required for --method restricted")
            result = radius_restricted(code, args.rtilde, threads=args.threads)
        else:
            result = radius_auto(code, force=args.force, threads=args.threads)
    except DegreeCapError as exc:
        raise CliError(str(exc), EXIT_INFEASIBLE)
    return {
        "code": code.descriptor(),
        "value": result.value,
        "status": result.status,
        "witness": format_perm(result.witness) if result.witness else None,
        "stats": result.stats,
    }


def cmd_table1(args: argparse.Namespace) -> dict:
    lo, hi = args.start, args.end
    if lo < 3 or hi < lo:
        raise CliError(f"need 3 <= start <= end, got [{lo},{hi}]")
    if hi > TABLE1_SOFT_LIMIT and not args.force:
        raise CliError(
            f"degrees beyond {TABLE1_SOFT_LIMIT} are unvalidated territory; "
            "pass --force to compute them anyway",
            EXIT_INFEASIBLE,
        )
    if hi > TABLE1_SOFT_LIMIT:
        print(
            f"warning: computing past n={TABLE1_SOFT_LIMIT}, runtimes may grow quickly",
            file=sys.stderr,
        )
    rows = []
    for n in range(lo, hi + 1):
        value = radius_auto(make_dihedral(n), threads=args.threads).value
        rows.append({"n": n, "r": value, "annotation": _dn_annotation(n, value)})
    return {"rows": rows}


def cmd_explain(args: argparse.Namespace) -> dict:
    code = _parse_code(args.code)
    try:
        f = parse_perm(args.perm)
    except ValueError as exc:
        raise CliError(f"bad --perm: {exc}")
    if len(f) != code.n:
        raise CliError(f"--perm degree {len(f)} != code degree {code.n}")
    r = args.r
    ws = window_sets(code.n, r)
    table = []
    exposed = False
    for locations, values in blocks(code):
        entries = []
        covered: set[int] = set()
        for i in sorted(locations):
            a = aset(code, i, f[i - 1], r)
            covered |= a.members
            entries.append({
                "position": i,
                "target": f[i - 1],
                "members": sorted(a.members),
            })
        block_exposed = covered >= values
        exposed = exposed or block_exposed
        table.append({
            "block_values": sorted(values),
            "asets": entries,
            "covered": sorted(covered),
            "exposed": block_exposed,
        })
    return {
        "code": code.descriptor(),
        "perm": format_perm(f),
        "r": r,
        "bottom_window": sorted(ws.bottom),
        "top_window": sorted(ws.top),
        "blocks": table,
        "exposed": exposed,
    }


def cmd_extrema(args: argparse.Namespace) -> dict:
    code = _parse_code(args.code)
    try:
        ex = relabel_extrema(code, force=args.force)
    except DegreeCapError as exc:
        raise CliError(str(exc), EXIT_INFEASIBLE)
    return {
        "code": ex.descriptor,
        "lmax": ex.lmax,
        "lmin": ex.lmin,
        "argmax": format_perm(ex.argmax),
        "argmin": format_perm(ex.argmin),
        "stats": ex.stats,
    }


def _table1_csv(payload: dict) -> str:
    lines = ["n,r,annotation"]
    for row in payload["rows"]:
        lines.append(f"{row['n']},{row['r']},{row['annotation']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for any randomized feature")
    common.add_argument("--threads", type=int, default=None,
                        help="solver worker count (default: PERMCOVER_THREADS or 1)")
    parser = argparse.ArgumentParser(
        prog="permcover",
        description="Covering radii of permutation group codes under the "
        "l-infinity metric.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formulas", parents=[common],
                       help="evaluate a closed-form value or bound")
    p.add_argument("--query", required=True, choices=[
        "r_cyclic", "lmax_cyclic", "r_pq", "lmax_pq", "r_product",
        "lmax_product", "dn_bounds", "dn_weak_lower", "lmin_cyclic_lower",
    ])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--parts", type=str, help="comma-separated block sizes")
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("witness", parents=[common], help="build and verify a lower-bound witness")
    p.add_argument("--family", required=True,
                   choices=["pq", "lmax", "dn", "dn-refined"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--report", action="store_true",
                   help="include the per-codeword exposure report")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("radius", parents=[common], help="compute an exact covering radius")
    p.add_argument("--code", required=True, help="JSON code descriptor")
    p.add_argument("--method", choices=["auto", "bruteforce", "restricted"],
                   default="auto")
    p.add_argument("--rtilde", type=int, help="trial radius for --method restricted")
    p.add_argument("--force", action="store_true",
                   help="override the brute-force degree cap")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("table1", parents=[common], help="tabulate exact dihedral radii")
    p.add_argument("--start", type=int, default=3)
    p.add_argument("--end", type=int, default=20)
    p.add_argument("--force", action="store_true",
                   help="allow degrees beyond the validated range")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("explain", parents=[common], help="print the A-set table for (f, C, r)")
    p.add_argument("--code", required=True, help="JSON code descriptor")
    p.add_argument("--perm", required=True, help="permutation, e.g. '[3,1,2]'")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("extrema", parents=[common], help="exact L_max/L_min over relabelings")
    p.add_argument("--code", required=True, help="JSON code descriptor")
    p.add_argument("--force", action="store_true",
                   help="override the conjugator-enumeration degree cap")
    p.set_defaults(func=cmd_extrema)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = int(os.environ.get("PERMCOVER_THREADS", "1"))
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_VALIDATION
    if args.seed is not None:
        random.seed(args.seed)
    start = time.perf_counter()
    try:
        payload = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except WitnessVerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    manifest = {
        "command": args.command,
        "parameters": {
            k: v for k, v in vars(args).items()
            if k not in ("func", "command") and v is not None
        },
        "version": __version__,
        "threads": args.threads,
        "wall_time_s": round(time.perf_counter() - start, 6),
        "result": payload,
    }
    if args.format == "csv" and args.command == "table1":
        sys.stdout.write(_table1_csv(payload))
        print(json.dumps(manifest), file=sys.stderr)
    else:
        print(json.dumps(manifest, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
