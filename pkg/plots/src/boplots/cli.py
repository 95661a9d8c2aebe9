"""plots <kind> <input.csv> -o <out.png>"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import KINDS, FigureSpec, PlotDataError, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plots", description="Render a static figure from a bolab CSV report")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("input_csv", type=Path)
    parser.add_argument("-o", "--output", type=Path, required=True,
                        help="output image (.png or .svg)")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0,) else 1
    try:
        out = render(FigureSpec(args.input_csv, args.kind, args.output))
    except PlotDataError as exc:
        print(f"plots: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
