"""Command-line entry point: render one figure from a result directory.

    epiecon-plot --figure infection-comparison --input results/ --out i.png
    epiecon-plot --figure scenario-panel --scenario baseline \
                 --input results/ --out panel.png

Exit status 0 on success, 1 with a diagnostic on stderr otherwise; on
failure no output file is written.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURE_KINDS, render_figure
from .io import PlotDataError


def build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiecon-plot",
        description="Render figures from simulation result directories",
    )
    parser.add_argument("--figure", required=True, choices=FIGURE_KINDS)
    parser.add_argument("--input", required=True,
                        help="directory with aggregate.csv and metrics.json")
    parser.add_argument("--out", required=True, help="image file to write")
    parser.add_argument("--scenario", default=None,
                        help="scenario id (scenario-panel only)")
    return parser


def main(argv=None) -> int:
    args = build_argparser().parse_args(argv)
    try:
        render_figure(args.figure, args.input, args.out, args.scenario)
    except (PlotDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
