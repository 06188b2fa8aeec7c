"""Command-line front end.

Exit status is 0 on success, 2 on invalid input and 1 when a verification
run finds a failure.  JSON output carries ``"schema": 1`` and is byte-for-byte
reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import affine, classify, fermions, fusion, twisted
from .cache import RankCache, set_default_cache
from .scalars import format_rational

SCHEMA = 1


class UsageError(Exception):
    pass


def _positive(name: str, minimum: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be >= {minimum}, got {value}")
        return value

    return parse


def _emit(payload: dict, rows: list[list], headers: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")
        return
    cells = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[n]) for r in cells) for n in range(len(headers))]
    for n, row in enumerate(cells):
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
        if n == 0:
            out.write("  ".join("-" * w for w in widths) + "\n")


# --- subcommands -------------------------------------------------------------------


def cmd_classify(args, out) -> int:
    descs = classify.classify_orbifold(args.k)
    items = [d.to_json() for d in descs]
    rows = [[x["label"], x["sector"], x["weight"], x["top_dim"], x["generator"]] for x in items]
    _emit(
        {"command": "classify", "k": args.k, "count": len(items), "modules": items},
        rows,
        ["label", "sector", "weight", "top_dim", "generator"],
        args.format,
        out,
    )
    return 0


def cmd_commutant(args, out) -> int:
    entries = classify.classify_commutant(args.m)
    items = [e.to_json() for e in entries]
    rows = [[x["label"], x["family"], x["sector"], x["weight"], x["top_dim"]] for x in items]
    _emit(
        {"command": "commutant", "m": args.m, "count": len(items), "modules": items},
        rows,
        ["label", "family", "sector", "weight", "top_dim"],
        args.format,
        out,
    )
    return 0


def cmd_fuse(args, out) -> int:
    if (args.a is None) != (args.b is None):
        raise UsageError("give both --a and --b, or neither for the full table")
    if args.a is None:
        table = fusion.fusion_table(args.k)
        rows = [[r["a"], r["b"], " + ".join(r["product"])] for r in table]
        _emit({"command": "fuse", "k": args.k, "table": table}, rows, ["a", "b", "product"], args.format, out)
        return 0
    a = fusion.parse_label(args.a, args.k)
    b = fusion.parse_label(args.b, args.k)
    try:
        product = fusion.fuse(a, b, args.k)
    except fusion.UnsupportedSectorError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(
            {"command": "fuse", "k": args.k, "a": str(a), "b": str(b), "product": [str(x) for x in product.sorted()]},
            [],
            [],
            "json",
            out,
        )
    else:
        out.write(f"{product}\n")
    return 0


def cmd_decompose(args, out) -> int:
    if args.i > args.k:
        raise UsageError(f"need 0 <= i <= k, got i={args.i}, k={args.k}")
    dims = affine.irreducible_graded_dims(args.k, args.i, args.D)
    iso = affine.k_isotypic_dims(args.k, args.i, args.D)
    tags = sorted({t for _, t in iso})
    totals = affine.degree_totals(dims, args.D)
    rows = [[d, totals[d]] + [iso[(d, t)] for t in tags] for d in range(args.D + 1)]
    payload = {
        "command": "decompose",
        "k": args.k,
        "i": args.i,
        "D": args.D,
        "graded": [{"d": d, "q": q, "dim": n} for (d, q), n in sorted(dims.items())],
        "isotypic": [{"d": d, "tag": t, "dim": iso[(d, t)]} for d in range(args.D + 1) for t in tags],
    }
    _emit(payload, rows, ["d", "dim"] + tags, args.format, out)
    return 0


def cmd_twist(args, out) -> int:
    if args.i > args.k:
        raise UsageError(f"need 0 <= i <= k, got i={args.i}, k={args.k}")
    if args.r not in (1, 2, 3):
        raise UsageError("--r must be 1, 2 or 3")
    table = twisted.twisted_component_dims(args.k, args.i, args.r, args.D)
    comps = []
    rows = []
    for lab, cells in table.items():
        comps.append(
            {
                "label": str(lab),
                "tag": lab.tag,
                "cells": [{"weight": format_rational(w), "dim": n} for w, n in sorted(cells.items())],
            }
        )
        for w, n in sorted(cells.items()):
            rows.append([str(lab), format_rational(w), n])
    stab = [str(g) for g in twisted.stabilizer(args.k, args.i, args.r)]
    payload = {
        "command": "twist",
        "k": args.k,
        "i": args.i,
        "r": args.r,
        "D": args.D,
        "lowest_weight": format_rational(twisted.twisted_lowest_weight(args.k, args.i)),
        "stabilizer": stab,
        "components": comps,
    }
    _emit(payload, rows, ["component", "weight", "dim"], args.format, out)
    return 0


def cmd_verify_ring(args, out) -> int:
    report = fusion.verify_ring(args.k)
    data = report.to_json()
    rows = [[key, json.dumps(val) if isinstance(val, list) else val] for key, val in data.items()]
    _emit({"command": "verify-ring", **data, "ok": report.ok}, rows, ["check", "result"], args.format, out)
    return 0 if report.ok else 1


def cmd_verify_fermion(args, out) -> int:
    report = fermions.verify_fermion(args.m, args.D)
    data = report.to_json()
    rows = [[r["relation"], "pass" if r["ok"] else "FAIL", r["counterexample"] or ""] for r in data["relations"]]
    _emit({"command": "verify-fermion", **data}, rows, ["relation", "result", "counterexample"], args.format, out)
    return 0 if report.ok else 1


def cmd_verify_generators(args, out) -> int:
    if args.r not in (1, 2, 3):
        raise UsageError("--r must be 1, 2 or 3")
    rep = affine.verify_fixed_generators(args.k, args.r, args.D, with_conformal=args.with_conformal)
    payload = {
        "command": "verify-generators",
        "k": args.k,
        "r": args.r,
        "D": args.D,
        "with_conformal": args.with_conformal,
        "generators_fixed": rep.fixed,
        "fixed_dims": rep.fixed_dims,
        "generated_dims": rep.generated_dims,
        "ok": rep.ok,
    }
    rows = [[d, f, g] for d, (f, g) in enumerate(zip(rep.fixed_dims, rep.generated_dims))]
    _emit(payload, rows, ["d", "fixed", "generated"], args.format, out)
    if args.format == "table":
        out.write(f"generators fixed: {rep.fixed}; result: {'pass' if rep.ok else 'FAIL'}\n")
    return 0 if rep.ok else 1


def cmd_cross_check(args, out) -> int:
    report = classify.cross_check(args.k, args.D)
    rows = [[m["label"], m["expected"], m["engine"]] for m in report.mismatches]
    _emit({"command": "cross-check", **report.to_json(), "ok": report.ok}, rows, ["label", "expected", "engine"], args.format, out)
    if args.format == "table":
        out.write(f"{len(report.confirmed)} confirmed, {len(report.mismatches)} mismatched\n")
    return 0 if report.ok else 1


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kleinorb", description="Klein-group orbifolds of affine sl2.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cache-dir", help="directory for cached Gram ranks")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    level = _positive("--k", 1)
    depth = _positive("--D", 0)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "irreducible L(k,0)^K-modules")
    p.add_argument("--k", type=level, required=True)
    p = add("commutant", cmd_commutant, "irreducible modules of the commutant at m")
    p.add_argument("--m", type=_positive("--m", 4), required=True)
    p = add("fuse", cmd_fuse, "fusion products of L(k,0)^<sigma_r>")
    p.add_argument("--k", type=level, required=True)
    p.add_argument("--a")
    p.add_argument("--b")
    p = add("decompose", cmd_decompose, "graded and Klein-isotypic dimensions of L(k,i)")
    p.add_argument("--k", type=level, required=True)
    p.add_argument("--i", type=_positive("--i", 0), required=True)
    p.add_argument("--D", type=depth, default=4)
    p = add("twist", cmd_twist, "twisted component dimensions")
    p.add_argument("--k", type=level, required=True)
    p.add_argument("--i", type=_positive("--i", 0), required=True)
    p.add_argument("--r", type=_positive("--r", 1), default=1)
    p.add_argument("--D", type=depth, default=2)
    p = add("verify-ring", cmd_verify_ring, "fusion ring axioms")
    p.add_argument("--k", type=level, required=True)
    p = add("verify-fermion", cmd_verify_fermion, "fermionic realization checks")
    p.add_argument("--m", type=_positive("--m", 4), default=4)
    p.add_argument("--D", type=depth, default=2)
    p = add("verify-generators", cmd_verify_generators, "generating set of L(k,0)^<sigma_r>")
    p.add_argument("--k", type=level, required=True)
    p.add_argument("--r", type=_positive("--r", 1), default=1)
    p.add_argument("--D", type=depth, default=3)
    p.add_argument("--with-conformal", action="store_true", help="add the Sugawara vector to the generators")
    p = add("cross-check", cmd_cross_check, "compare descriptors with engine output")
    p.add_argument("--k", type=level, required=True)
    p.add_argument("--D", type=depth, default=3)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.cache_dir:
        set_default_cache(RankCache(args.cache_dir))
    try:
        return args.func(args, out)
    except (UsageError, fusion.LabelSyntaxError, ValueError) as exc:
        err.write(f"kleinorb {args.command}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
