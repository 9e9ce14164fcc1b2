"""Command-line pipeline driver.

Subcommands: ``analyze`` a price CSV into spectra/report artifacts,
``model`` to emit the exact cascade reference table, ``cascade`` to
sample a synthetic dust (optionally chaining straight into analysis).
Exit status 0 on success, 1 on analysis errors, 2 on bad configuration.
All outputs are deterministic for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import datetime as dt
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .binomial import BinomialParams, generate_cascade, model_spectrum
from .indicators import Thresholds
from .ingest import ParseError, PriceFormat, parse_prices, select_window
from .pipeline import AnalysisConfig, AnalysisResult, analyze_signal, analyze_unit_dust
from . import serialize


class ConfigError(Exception):
    """Bad parameter combination; maps to exit status 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantordust",
        description="Multifractal crash-signature analysis of daily price series.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a price CSV window")
    pa.add_argument("input", type=Path, help="delimiter-separated price file")
    pa.add_argument("--delimiter", default=",")
    pa.add_argument("--date-column", default="date")
    pa.add_argument("--close-column", default="close")
    pa.add_argument("--no-header", action="store_true",
                    help="columns are positional: date first, close second")
    pa.add_argument("--end-day", type=dt.date.fromisoformat, default=None,
                    help="last day of the window (default: last day in file)")
    pa.add_argument("--window", type=int, default=None,
                    help="number of records in the window (default: all available)")
    pa.add_argument("--boxes", type=int, default=None, help="box count L (default isqrt(T))")
    pa.add_argument("--bins", type=int, default=None, help="alpha bin count (default isqrt(L))")
    pa.add_argument("--q-lo", type=int, default=-10)
    pa.add_argument("--q-hi", type=int, default=10)
    pa.add_argument("--iso-weight", type=int, default=1)
    pa.add_argument("--no-trim", action="store_true",
                    help="skip the falling-price floor cut")
    pa.add_argument("--gap-threshold", type=float, default=3.0)
    pa.add_argument("--asymmetry-threshold", type=float, default=0.2)
    pa.add_argument("--dispersion-threshold", type=int, default=2)
    pa.add_argument("--outdir", type=Path, default=None,
                    help="output directory (default: $CANTORDUST_OUTDIR or ./cantordust_out)")
    pa.add_argument("--dump-cover", type=Path, default=None,
                    help="also write the unpruned cover JSON to this path")

    pm = sub.add_parser("model", help="emit the exact cascade reference table")
    pm.add_argument("--weight-ratio", "-P", required=True,
                    help="weight ratio P > 1 (rational forms stay exact, e.g. 2 or 5/2)")
    pm.add_argument("--depth", "-k", type=int, required=True)
    pm.add_argument("--boxes", "-L", type=int, required=True)
    pm.add_argument("--out", type=Path, default=None, help="output CSV (default stdout)")

    pc = sub.add_parser("cascade", help="sample a synthetic dyadic cascade dust")
    pc.add_argument("--p", type=float, required=True, help="left-child mass fraction in (0,1)")
    pc.add_argument("--depth", "-k", type=int, required=True)
    pc.add_argument("--samples", type=int, required=True)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--out", type=Path, default=Path("cascade_points.csv"))
    pc.add_argument("--analyze", action="store_true",
                    help="chain the generated dust into the analysis pipeline")
    pc.add_argument("--boxes", type=int, default=None,
                    help="box count for --analyze (default 2^depth)")
    pc.add_argument("--outdir", type=Path, default=None)
    return parser


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _emit_analysis(result: AnalysisResult, outdir: Path) -> None:
    _write(outdir / "cover.json", serialize.cover_json(result.cover))
    _write(outdir / "alphas.csv", serialize.alphas_csv(result))
    _write(outdir / "hist_spectrum.csv", serialize.histogram_csv(result.histogram))
    _write(outdir / "thermo_spectrum.csv", serialize.thermo_csv(result.thermo))
    _write(outdir / "split.csv", serialize.split_csv(result.split))
    _write(outdir / "profile.csv", serialize.profile_csv(result.profile))
    _write(outdir / "report.json", serialize.report_json(result))


def _resolve_outdir(given: Path | None) -> Path:
    if given is not None:
        return given
    env = os.environ.get("CANTORDUST_OUTDIR")
    return Path(env) if env else Path("cantordust_out")


def _cmd_analyze(args) -> int:
    try:
        config = AnalysisConfig(
            n_boxes=args.boxes, n_bins=args.bins, q_lo=args.q_lo, q_hi=args.q_hi,
            iso_weight=args.iso_weight, trim=not args.no_trim,
            thresholds=Thresholds(gap=args.gap_threshold, asymmetry=args.asymmetry_threshold,
                                  dispersion=args.dispersion_threshold),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    fmt = PriceFormat(delimiter=args.delimiter, date_column=args.date_column,
                      close_column=args.close_column, has_header=not args.no_header)
    text = args.input.read_text()
    points = parse_prices(text, fmt)
    if not points:
        raise ValueError(f"no price rows in {args.input}")
    end_day = args.end_day if args.end_day is not None else max(p.day for p in points)
    n = args.window if args.window is not None else sum(1 for p in points if p.day <= end_day)
    signal = select_window(points, end_day, n)
    result = analyze_signal(signal, config)

    outdir = _resolve_outdir(args.outdir)
    _emit_analysis(result, outdir)
    if args.dump_cover is not None:
        _write(args.dump_cover, serialize.cover_json(result.cover))
    sys.stdout.write(serialize.report_text(result))
    return 0


def _cmd_model(args) -> int:
    try:
        P = Fraction(args.weight_ratio)
        params = BinomialParams(P=P, k=args.depth, L=args.boxes)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc) or f"cannot parse weight ratio {args.weight_ratio!r}") from None
    table = serialize.model_csv(model_spectrum(params))
    if args.out is None:
        sys.stdout.write(table)
    else:
        _write(args.out, table)
    return 0


def _cmd_cascade(args) -> int:
    if not 0.0 < args.p < 1.0:
        raise ConfigError(f"p must lie strictly inside (0, 1), got {args.p}")
    if args.samples < 1:
        raise ConfigError(f"samples must be >= 1, got {args.samples}")
    if not 1 <= args.depth <= 60:
        raise ConfigError(f"cascade depth must be in [1, 60], got {args.depth}")
    values = generate_cascade(args.p, args.depth, args.samples, args.seed)
    _write(args.out, serialize.points_csv(values))
    if args.analyze:
        L = args.boxes if args.boxes is not None else 2 ** args.depth
        config = AnalysisConfig(n_boxes=L)
        result = analyze_unit_dust(values, label=f"cascade p={args.p} k={args.depth}",
                                   config=config)
        outdir = _resolve_outdir(args.outdir)
        _emit_analysis(result, outdir)
        sys.stdout.write(serialize.report_text(result))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "model": _cmd_model, "cascade": _cmd_cascade}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
