"""Command line entry point: render figure specs to image files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .csvio import FigureError
from .figspec import load_figure_spec
from .render import render

__all__ = ["main"]


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render plots from runner CSV output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render a YAML figure spec to a PNG")
    p_render.add_argument("spec", help="path to the figure spec file")
    p_render.add_argument(
        "--out",
        default=None,
        help="output image path (default: the spec's output field)",
    )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "render":
            spec_path = Path(args.spec)
            spec = load_figure_spec(spec_path)
            out = render(spec, spec_path.parent, args.out)
            print(out)
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
