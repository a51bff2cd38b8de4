"""`plots <figure-kind> <csv> -o <png>`"""
from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_KINDS, FigureSpec, render
from .schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plots",
                                 description="figures from swirllab CSV outputs")
    ap.add_argument("kind", choices=FIGURE_KINDS)
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", required=True, help="output PNG path")
    ap.add_argument("--N", type=float, default=None,
                    help="envelope threshold (growth-envelope; default from CSV footer)")
    ap.add_argument("--M", type=float, default=None,
                    help="inverse peak radius (growth-envelope; default from CSV footer)")
    ap.add_argument("--xlim", type=float, nargs=2, default=None)
    ap.add_argument("--ylim", type=float, nargs=2, default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = {}
    if args.N is not None:
        params["N"] = args.N
    if args.M is not None:
        params["M"] = args.M
    spec = FigureSpec(csv_path=args.csv, kind=args.kind, output_path=args.output,
                      xlim=tuple(args.xlim) if args.xlim else None,
                      ylim=tuple(args.ylim) if args.ylim else None,
                      params=params)
    try:
        render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
