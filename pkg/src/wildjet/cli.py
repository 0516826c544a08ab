"""Command-line interface: ``wildjet <subcommand> ...``.

Every subcommand writes JSON lines to stdout; the scan subcommands also
support ``--format csv``. Arcs are given as JSON, either an object
``{"t": "X^6 + X^7", "u": "X^4"}`` or a two-element list of literals.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import kernels
from .arc import Arc, hn_expand, intersect, multiplicity, singularity_degree, tangent
from .cover import (
    KummerCover, branch_data, cover_from_dict, filtration_on_arc, kummer_lift_count,
    lift_arc_kummer, restrict_to_arc, wild_jumps_on_arc,
)
from .errors import ArcInBranchLocus, InfiniteIntersection, NoRoot, PrecisionExhausted
from .field import field
from .lab import (
    all_nontrivial_characters, generic_jump_scan, scan_table, strong_filtration_check,
    swan_infinity_estimate, verify_jet_order, _json_safe,
)
from .series import DEFAULT_PRECISION, format_series

DEFAULT_P = 3


def _emit(obj, out):
    out.write(json.dumps(_json_safe(obj), separators=(",", ":")) + "\n")


def _read_cover_dict(path: str) -> dict:
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".toml":
        from .cover import tomllib
        return tomllib.loads(text)
    return json.loads(text)


def _field(args, cover_dict: dict | None = None):
    p, e = args.p, args.ext_degree
    if cover_dict is not None:
        if p is None and "p" in cover_dict:
            p = int(cover_dict["p"])
        if e is None and "ext_degree" in cover_dict:
            e = int(cover_dict["ext_degree"])
    return field(p if p is not None else DEFAULT_P, e if e is not None else 1)


def _load(args):
    d = _read_cover_dict(args.cover)
    F = _field(args, d)
    return F, cover_from_dict(d, F, args.precision)


def _arc(text: str, F, prec: int) -> Arc:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"arc must be JSON like {{\"t\": \"X^2\", \"u\": \"X^3\"}}: {exc}") from None
    return Arc.parse(spec, F, prec)


def _series_str(s) -> str:
    return format_series(s)


def cmd_jumps(args, out):
    F, cv = _load(args)
    c = _arc(args.arc, F, args.precision)
    res = restrict_to_arc(cv, c)
    restricted = [_series_str(s) for s in res] if isinstance(res, list) else _series_str(res)
    record = {"arc": c.to_dict(), "restriction": restricted, "jumps": wild_jumps_on_arc(cv, c),
              "filtration": filtration_on_arc(cv, c).to_dict(), "branch": branch_data(cv).to_dict()}
    _emit(record, out)


def cmd_intersect(args, out):
    F = _field(args)
    c, d = _arc(args.c, F, args.precision), _arc(args.d, F, args.precision)
    try:
        _emit({"intersection": intersect(c, d), "infinite": False}, out)
    except InfiniteIntersection as exc:
        _emit({"intersection": None, "infinite": True, "lower_bound": exc.lower_bound}, out)


def cmd_hn(args, out):
    F = _field(args)
    c = _arc(args.arc, F, args.precision)
    hn = hn_expand(c, final_terms=args.terms)
    tg = tangent(c)
    _emit({"arc": c.to_dict(), "multiplicity": multiplicity(c), "tangent": [tg.alpha, tg.beta],
           "degree": hn.d, "singularity_degree": hn.M, **hn.to_dict()}, out)


def cmd_lift(args, out):
    F, cv = _load(args)
    if not isinstance(cv, KummerCover):
        raise ValueError("lift needs a Kummer cover")
    c = _arc(args.arc, F, args.precision)
    n = kummer_lift_count(cv, c)
    lifts = lift_arc_kummer(cv, c)
    _emit({"arc": c.to_dict(), "n_C": n, "lifts": [
        {**x.to_dict(), "multiplicity": multiplicity(x), "singularity_degree": singularity_degree(x)}
        for x in lifts]}, out)


def _emit_report(report, out):
    for line in report.to_lines():
        out.write(line + "\n")


def _csv(rows, columns, out):
    w = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (str(row[k]) if isinstance(row[k], Fraction) else row[k]) for k in columns})


def cmd_verify(args, out):
    F, cv = _load(args)
    rep = verify_jet_order(cv, args.trials, args.seed, prec=args.precision, r_max=args.rmax,
                           workers=args.workers)
    _emit_report(rep, out)


def cmd_scan(args, out):
    F, cv = _load(args)
    rep = generic_jump_scan(cv, args.rmax, args.samples, args.seed, prec=args.precision, workers=args.workers)
    if args.format == "csv":
        _csv(scan_table(rep), ["r", "i", "w_max", "w_mode", "ratio"], out)
    else:
        _emit_report(rep, out)


def cmd_strong(args, out):
    F, cv = _load(args)
    rep = strong_filtration_check(cv, args.trials, args.seed, prec=args.precision, r_max=args.rmax,
                                  workers=args.workers)
    _emit_report(rep, out)


def _read_rep(path: str, p: int, n: int) -> list[tuple]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        if data.get("all_nontrivial"):
            return all_nontrivial_characters(p, n)
        data = data["characters"]
    return [tuple(c) for c in data]


def cmd_swan(args, out):
    F, cv = _load(args)
    n = len(getattr(cv, "components", (cv,)))
    rep = _read_rep(args.rep, F.p, n)
    report = swan_infinity_estimate(cv, rep, args.rmax, args.seed, samples_per_r=args.samples,
                                    prec=args.precision, workers=args.workers)
    if args.format == "csv":
        _csv(report.records, ["r", "swan_max", "swan_mode", "ratio"], out)
    else:
        _emit_report(report, out)


def _add_globals(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--p", type=int, default=d(None), help="characteristic (default: cover file, else 3)")
    parser.add_argument("--ext-degree", type=int, default=d(None), help="extension degree e of F_{p^e}")
    parser.add_argument("--precision", type=int, default=d(DEFAULT_PRECISION), help="series precision")
    parser.add_argument("--format", choices=["json", "csv"], default=d("json"), help="output format")
    parser.add_argument("--workers", type=int, default=d(None), help="process pool size for experiments")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wildjet", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    parser.add_argument("--backend", choices=sorted(kernels.BACKENDS), default=None,
                        help="series kernel backend")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, cover=True):
        sp = sub.add_parser(name, help=help_)
        _add_globals(sp, suppress=True)
        if cover:
            sp.add_argument("cover", help="cover file (.json or .toml)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("jumps", cmd_jumps, "wild jumps of a cover along an arc")
    sp.add_argument("--arc", required=True)
    sp = add("intersect", cmd_intersect, "intersection multiplicity of two arcs", cover=False)
    sp.add_argument("--c", required=True)
    sp.add_argument("--d", required=True)
    sp = add("hn", cmd_hn, "Hamburger-Noether expansion of an arc", cover=False)
    sp.add_argument("--arc", required=True)
    sp.add_argument("--terms", type=int, default=8, help="final-row coefficients to print")
    sp = add("lift", cmd_lift, "lift an arc to the Kummer cover x^l = T")
    sp.add_argument("--arc", required=True)
    sp = add("verify-jet-order", cmd_verify, "above/below threshold jump comparison")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--rmax", type=int, default=4)
    sp = add("generic-scan", cmd_scan, "generic jumps per contact order")
    sp.add_argument("--rmax", type=int, default=9)
    sp.add_argument("--samples", type=int, default=30)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("strong-check", cmd_strong, "full filtration equality for tangent pairs")
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--rmax", type=int, default=1)
    sp = add("swan-scan", cmd_swan, "Swan conductors per contact order")
    sp.add_argument("--rep", required=True, help="JSON list of character vectors, or {\"all_nontrivial\": true}")
    sp.add_argument("--rmax", type=int, default=6)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        kernels.set_backend(args.backend)
    try:
        args.func(args, out)
    except (ValueError, TypeError, KeyError, OSError, NoRoot, PrecisionExhausted, ArcInBranchLocus) as exc:
        print(f"wildjet {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
