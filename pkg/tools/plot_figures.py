#!/usr/bin/env python3
"""Dev-only plotting helper for the figure CSV bundles.

Not part of the library surface.  Emit data first, then plot:

    treepoly figure fig6 --out out/fig6
    python tools/plot_figures.py out/fig6 --save fig6.png

Reads whichever of the known CSV files exist in the directory and layers
them into one matplotlib axes (hull boundaries, model curve, surface cloud).
"""

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path


def _load(path: Path) -> list[dict]:
    with path.open() as stream:
        return list(csv.DictReader(stream))


def _xy(row: dict) -> tuple[float, float]:
    cells = [v for k, v in row.items() if k.startswith("p[")]
    return float(Fraction(cells[0])), float(Fraction(cells[1]))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory", type=Path)
    parser.add_argument("--save", type=Path, default=None,
                        help="write a PNG instead of opening a window")
    args = parser.parse_args()

    try:
        import matplotlib
        if args.save:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is not installed; this helper is optional", file=sys.stderr)
        return 1

    fig, ax = plt.subplots(figsize=(7, 7))
    for path in sorted(args.directory.glob("*_multinomial.csv")):
        pts = [_xy(r) for r in _load(path)]
        ax.scatter(*zip(*pts), s=6, c="0.8", label=path.stem)
    for path in sorted(args.directory.glob("*_points.csv")):
        pts = [_xy(r) for r in _load(path)]
        ax.scatter(*zip(*pts), s=18, c="0.5", label=path.stem)
    for path in sorted(args.directory.glob("*_hull*.csv")):
        cycle = [_xy(r) for r in _load(path)]
        cycle.append(cycle[0])
        ax.plot(*zip(*cycle), lw=1, label=path.stem)
    for path in sorted(args.directory.glob("*_beta.csv")):
        pts = [_xy(r) for r in _load(path)]
        ax.plot(*zip(*pts), lw=2, c="black", label=path.stem)

    ax.set_xlabel("comb share")
    ax.set_ylabel("second-coordinate share")
    ax.legend(fontsize=7)
    if args.save:
        fig.savefig(args.save, dpi=150, bbox_inches="tight")
        print(args.save)
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
