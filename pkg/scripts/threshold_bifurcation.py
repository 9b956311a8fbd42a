#!/usr/bin/env python3
"""Scan the entanglement structure across the oscillation threshold.

Below threshold only the two pair-created sideband pairs are entangled;
once the cavity oscillates, the bright signal and idler fields couple the
pump sidebands into the register and every bipartition becomes inseparable.
The scan tracks one bipartition from each family on a fine pump-power grid
around threshold and writes the curves to CSV and SVG.
"""

import argparse
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from opo_sidebands import analysis, cli, opo
from opo_sidebands.modes import Bipartition

TRACKED = {
    "squeezer-split": Bipartition.of({3, 4}, 6),
    "single-mode": Bipartition.of({3}, 6),
    "pump-split": Bipartition.of({0, 1}, 6),
    "twin-sideband": Bipartition.of({3, 5}, 6),
    "single-beam": Bipartition.of({2, 3}, 6),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--span", type=float, default=0.25, help="half width of the sigma window")
    parser.add_argument("--points", type=int, default=101, help="number of grid points")
    parser.add_argument("--output-dir", default="out", help="directory for CSV and SVG output")
    args = parser.parse_args()
    if args.span <= 0 or args.span >= 1 or args.points < 3:
        parser.error("span must lie in (0, 1) and points must be at least 3")

    os.makedirs(args.output_dir, exist_ok=True)
    grid = np.linspace(1.0 - args.span, 1.0 + args.span, args.points)
    points = analysis.sweep_sigma(opo.OpoParams(), grid)

    csv_path = os.path.join(args.output_dir, "threshold_scan.csv")
    cli.write_sweep_csv(csv_path, points)
    print(f"wrote {csv_path}")

    fig, ax = plt.subplots(figsize=(6, 4))
    sigmas = [p.sigma for p in points]
    for name, b in TRACKED.items():
        ax.plot(sigmas, [p.table.nu_min(b) for p in points], label=f"{b.label()} ({name})")
    ax.axhline(1.0, color="0.6", linestyle="--", linewidth=0.8)
    ax.axvline(1.0, color="0.6", linestyle=":", linewidth=0.8)
    ax.set_xlabel("pump power / threshold")
    ax.set_ylabel("PT witness min symplectic eigenvalue")
    ax.legend(fontsize=8)
    fig.tight_layout()

    figure_path = os.path.join(args.output_dir, "threshold_scan.svg")
    fig.savefig(figure_path)
    print(f"wrote {figure_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
