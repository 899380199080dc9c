"""Command-line front end.

    qreals expand SPEC [--order N] [--format plain|csv|json|bfile]
    qreals cfrac SPEC [--delta D] [--shift S] [--layers L] [--order N]
    qreals wall (SPEC | --file PATH) [--shifts A..B] [--n N] [--method M]
    qreals verify --conjecture K [--n N] [--budget-seconds T]

SPEC is a rational ``p/q``, ``metallic:n``, a regular continued fraction
``[a0;a1,...,(p1,...,pk)]`` or one of the named series (catalan, motzkin).

Exit codes: 0 verified / ok, 1 verification failure, 2 usage or parse
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Optional

from .cfrac import CFracError, c_expand, find_period, periodize, render, super_delta_expand
from .hankel import HankelError, hankel_wall
from .qreal import QRealError, parse_number_spec
from .recurrences import verify_conjecture
from .series import SeriesError, TruncatedSeries

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_ORDER = 40


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    spec: Optional[str] = None
    file: Optional[str] = None
    order: Optional[int] = None
    shift_min: int = 0
    shift_max: int = 0
    n_max: int = 12
    delta: Optional[int] = None
    shift: int = 0
    layers: Optional[int] = None
    fmt: str = "plain"
    seed: int = 0
    method: str = "auto"
    conjecture: Optional[int] = None
    budget_seconds: Optional[float] = None


def parse_shift_range(text: str):
    """``A..B`` or a single ``A``."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty shift range {text!r}")
    return lo, hi


def read_sequence(path: str) -> TruncatedSeries:
    """An integer sequence from a file: b-file lines ``index value``, or
    plain values separated by whitespace or commas (index from 0)."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        if lines and all(len(ln.split()) == 2 and "," not in ln for ln in lines):
            return TruncatedSeries.from_bfile("\n".join(lines))
        values = [int(tok) for tok in re.split(r"[\s,]+", " ".join(lines)) if tok]
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return TruncatedSeries.from_coefficients(values, 0, len(values))


def _emit_series(f: TruncatedSeries, fmt: str) -> str:
    if fmt == "bfile":
        return f.to_bfile()
    if fmt == "json":
        return f.dumps() + "\n"
    start = min(f.valuation, 0) if f.coeffs else 0
    stop = f.order if f.order != float("inf") else start + len(f.coeffs)
    if fmt == "csv":
        return "n,coefficient\n" + "".join(f"{i},{f[i]}\n" for i in range(start, stop))
    return str(f) + "\n"


def cmd_expand(cfg: RunConfig) -> int:
    spec = parse_number_spec(cfg.spec)
    f = spec.series(cfg.order or DEFAULT_ORDER)
    sys.stdout.write(_emit_series(f, cfg.fmt))
    return EXIT_OK


def cmd_cfrac(cfg: RunConfig) -> int:
    spec = parse_number_spec(cfg.spec)
    order = cfg.order or 2 * DEFAULT_ORDER
    f = spec.series(order + cfg.shift).drop(cfg.shift)
    profile = None
    if cfg.delta is None:
        cf = c_expand(f, cfg.layers)
    else:
        cf, profile = super_delta_expand(f, cfg.delta, cfg.layers)
    found = find_period(cf.layers[1:], min_repeats=3) if len(cf.layers) > 3 else None
    if cfg.fmt == "json":
        out = {"source": cfg.spec, "shift": cfg.shift, "delta": cfg.delta,
               "certified_order": None if cf.certified_order in (None, float("inf"))
               else cf.certified_order,
               "fraction": cf.to_json(),
               "layer_period": None if found is None else
               {"preperiod": found[0] + 1, "period": found[1]}}
        if profile is not None:
            out["k"] = list(profile.k_sequence)
            out["v"] = [str(v) for v in profile.v_sequence]
        sys.stdout.write(json.dumps(out) + "\n")
        return EXIT_OK
    if cfg.fmt == "csv":
        lines = ["layer,coeff,exponent,denominator"]
        for i, L in enumerate(cf.layers):
            lines.append(f"{i},{L.coeff},{L.exponent},"
                         + " ".join(str(c) for c in L.denominator.coeffs))
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    if cfg.fmt == "bfile":
        raise UsageError("cfrac output has no b-file form")
    folded = periodize(cf, min_repeats=3) if found is not None else None
    print(render(folded) if folded is not None else render(cf))
    print(f"layers: {len(cf.layers)}, certified through q^{cf.certified_order}")
    if profile is not None:
        print("k: " + ", ".join(str(x) for x in profile.k_sequence))
        print("v: " + ", ".join(str(x) for x in profile.v_sequence))
    if found is None:
        print("layer period: none detected")
    else:
        print(f"layer period: {found[1]} after {found[0] + 1} layers")
    return EXIT_OK


def cmd_wall(cfg: RunConfig) -> int:
    needed = cfg.shift_max + 2 * cfg.n_max - 1
    if cfg.file is not None:
        f = read_sequence(cfg.file)
        if f.order < needed:
            raise UsageError(f"sequence has {f.order} terms, the wall needs {needed}")
        source = cfg.file
    else:
        order = cfg.order if cfg.order is not None else needed
        if order < needed:
            print(f"note: order raised from {order} to {needed} "
                  f"(shift {cfg.shift_max} + 2*{cfg.n_max} - 1)", file=sys.stderr)
            order = needed
        f = parse_number_spec(cfg.spec).series(order)
        source = cfg.spec
    wall = hankel_wall(f, cfg.shift_max, cfg.n_max, method=cfg.method, source=source,
                       seed=cfg.seed, shift_min=cfg.shift_min)
    if cfg.fmt == "csv":
        sys.stdout.write(wall.to_csv())
    elif cfg.fmt == "json":
        sys.stdout.write(wall.dumps() + "\n")
    elif cfg.fmt == "bfile":
        for s in wall.shifts:
            sys.stdout.write(f"# shift {s}\n")
            sys.stdout.write("".join(f"{n} {x}\n" for n, x in enumerate(wall.row(s))))
    else:
        print(wall.pretty())
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.conjecture is None:
        raise UsageError("verify needs --conjecture K")
    report = verify_conjecture(cfg.conjecture, cfg.n_max, cfg.budget_seconds,
                               method=cfg.method, seed=cfg.seed)
    if cfg.fmt == "json":
        sys.stdout.write(report.dumps() + "\n")
    else:
        print(f"k={report.k} n_max={report.n_max}: {report.status}")
        for r in report.rows:
            print(f"  shift {r.shift}: {'ok' if r.passed else 'FAIL'} "
                  f"(values in -1..1: {r.in_range_pm1}, "
                  f"period: {r.expected_period['holds']}, "
                  f"recurrence: {r.recurrence['holds']})")
        if report.insufficient_range:
            print("  insufficient range: too short to falsify the claims")
        for note in report.notes:
            print(f"  note: {note}")
    if report.status == "budget_exceeded":
        return EXIT_BUDGET
    return EXIT_OK if report.status == "passed" else EXIT_FAILED


COMMANDS = {"expand": cmd_expand, "cfrac": cmd_cfrac, "wall": cmd_wall, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qreals", description="q-deformed real numbers as series, "
                                "continued fractions and Hankel walls")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("plain", "csv", "json", "bfile")):
        sp.add_argument("--order", type=int, help="number of series coefficients")
        sp.add_argument("--format", dest="fmt", choices=formats, default="plain")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("expand", help="print the series of a number")
    sp.add_argument("spec")
    common(sp)

    sp = sub.add_parser("cfrac", help="expand into a C-fraction or super delta-fraction")
    sp.add_argument("spec")
    sp.add_argument("--delta", type=int, help="super delta-fraction with this delta")
    sp.add_argument("--shift", type=int, default=0, help="drop this many leading coefficients")
    sp.add_argument("--layers", type=int, help="number of layers (default: all certified)")
    common(sp, ("plain", "csv", "json"))

    sp = sub.add_parser("wall", help="shifted Hankel determinants")
    sp.add_argument("spec", nargs="?")
    sp.add_argument("--file", help="integer sequence (b-file or plain values); '-' for stdin")
    sp.add_argument("--shifts", type=parse_shift_range, default=(0, 0), metavar="A..B")
    sp.add_argument("--n", dest="n_max", type=int, default=12)
    sp.add_argument("--method", choices=("auto", "naive", "han"), default="auto")
    common(sp)

    sp = sub.add_parser("verify", help="check the metallic Hankel conjecture for one k")
    sp.add_argument("--conjecture", type=int, required=True, metavar="K")
    sp.add_argument("--n", dest="n_max", type=int, default=60)
    sp.add_argument("--budget-seconds", type=float)
    sp.add_argument("--method", choices=("auto", "naive", "han"), default="auto")
    common(sp, ("plain", "json"))
    return p


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, order=args.order, fmt=args.fmt, seed=args.seed)
    for name in ("spec", "file", "delta", "shift", "layers", "n_max", "method",
                 "conjecture", "budget_seconds"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "shifts"):
        cfg.shift_min, cfg.shift_max = args.shifts
    if cfg.command == "wall" and (cfg.spec is None) == (cfg.file is None):
        raise UsageError("wall needs exactly one of SPEC or --file")
    if cfg.order is not None and cfg.order < 0:
        raise UsageError("--order must be non-negative")
    if cfg.n_max < 0 or cfg.shift < 0:
        raise UsageError("--n and --shift must be non-negative")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, QRealError, CFracError, HankelError, SeriesError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
