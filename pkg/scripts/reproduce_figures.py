#!/usr/bin/env python3
"""Write the CSV data behind the three standard density-plot figures.

fig2: phase-space distributions of a Gaussian state and a narrower Gaussian
      slit, aligned on the axis (state wider than slit).
fig3: distribution of a two-hump superposition showing the oscillatory
      cross term peaking at the origin.
fig4: p = 0 slice of the slit output while a matched-width slit scans
      across the two-hump state; the cross term leaves no central ridge.

Matrices are plain CSV (rows = q except fig4 where rows = slit center D),
ready for gnuplot/matplotlib; each carries a JSON sidecar with the lattice.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from wignerlab.cli import main as cli_main


def run(out_dir: str) -> int:
    base = Path(out_dir)
    for which, extra in (("fig2", []), ("fig3", []), ("fig4", [])):
        rc = cli_main(["figure", which, "--out", str(base / which), *extra])
        if rc != 0:
            return rc
        print(f"{which}: wrote {sorted(p.name for p in (base / which).iterdir())}")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figure_data", help="output directory root")
    args = parser.parse_args()
    sys.exit(run(args.out))
