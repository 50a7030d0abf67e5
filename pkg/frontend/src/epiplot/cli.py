"""Command-line figure renderer for trajectory CSV artifacts.

Example:
    epiplot --layout 2x2 --overlay --inputs covid_nsfd.csv \\
        covid_koopman_d2.csv ... --out overview.png
    epiplot --layout 1x1 --overlay --zoom 350:500 \\
        --inputs measles_long_nsfd.csv measles_long_koopman_d2.csv \\
        --out zoom.png

Exits 0 on success, 2 on any bad input (missing file, schema mismatch,
impossible layout or zoom window), 4 when the image cannot be written.
"""

from __future__ import annotations

import argparse
import sys

from .reader import SchemaError
from .render import PlotSpec, render

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_IO = 4


def _parse_layout(text: str):
    try:
        rows, cols = text.lower().split("x")
        return int(rows), int(cols)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"layout must look like 2x2, got {text!r}"
        ) from None


def _parse_zoom(text: str):
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"zoom must look like 350:500, got {text!r}"
        ) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiplot",
        description="Render multi-panel epidemic trajectory figures from CSV files.",
    )
    parser.add_argument(
        "--layout", type=_parse_layout, default=(1, 1), help="panel grid, e.g. 2x2"
    )
    parser.add_argument(
        "--inputs", nargs="+", required=True, metavar="CSV", help="trajectory files"
    )
    parser.add_argument(
        "--overlay",
        action="store_true",
        help="treat inputs as (truth, prediction) pairs: solid vs dashed",
    )
    parser.add_argument(
        "--zoom", type=_parse_zoom, default=None, help="time window lo:hi"
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument(
        "--decimate",
        type=int,
        default=1,
        metavar="N",
        help="keep every N-th sample (default: keep all)",
    )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    rows, cols = args.layout
    try:
        spec = PlotSpec(
            inputs=tuple(args.inputs),
            rows=rows,
            cols=cols,
            overlay=args.overlay,
            zoom=args.zoom,
            out=args.out,
            decimate=args.decimate,
        )
        path = render(spec)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: cannot write figure: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
