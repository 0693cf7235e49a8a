"""hcss-plot: render one figure from an hcss CSV."""

from __future__ import annotations

import argparse
import sys

from .errors import SchemaMismatch
from .render import FIGURE_KINDS, render_figure


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hcss-plot",
        description="Render a publication-style figure (SVG/PDF) from an hcss CSV.",
    )
    parser.add_argument("--kind", choices=FIGURE_KINDS, required=True)
    parser.add_argument("--csv", required=True, help="input CSV from the hcss CLI")
    parser.add_argument("--curve", help="fitted-curve CSV overlay (power_sweep only)")
    parser.add_argument("--out", required=True, help="output figure path (SVG/PDF)")
    args = parser.parse_args(argv)
    try:
        render_figure(args.kind, args.csv, args.out, curve_csv=args.curve)
    except (SchemaMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"figure -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
