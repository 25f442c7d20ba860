"""Command line wrapper: figures <kind> --in <csv> [--in2 <csv>] --out <img>."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .render import KINDS, FigureSpec, SchemaError, render

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render qmzi CSV outputs as PNG or SVG figures.",
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument("--in", dest="input1", required=True, help="input CSV")
    parser.add_argument(
        "--in2", dest="input2", help="second input CSV (generalized: the alpha sweep)"
    )
    parser.add_argument("--out", required=True, help="output image (.png or .svg)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    inputs = (args.input1,) if args.input2 is None else (args.input1, args.input2)
    try:
        render(FigureSpec(kind=args.kind, inputs=inputs, out=args.out))
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
