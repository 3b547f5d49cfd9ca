#!/usr/bin/env python3
"""Render every figure preset (CSV + SVG) into an output directory.

Usage:
  python scripts/run_figures.py --outdir out/figures [--seed 1729] [--only fig2 fig5]
"""

import argparse
import json
import time

from spikesep.harness.figures import FIGURE_PRESETS, run_figure


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out/figures")
    parser.add_argument("--seed", type=int, default=1729)
    parser.add_argument("--only", nargs="*", default=sorted(FIGURE_PRESETS))
    args = parser.parse_args()
    for name in args.only:
        t0 = time.time()
        result = run_figure(name, args.outdir, master_seed=args.seed)
        print(f"== {name} ({time.time() - t0:.1f}s)")
        for f in result["files"]:
            print("  wrote", f)
        for key, report in result["reports"].items():
            print("  ", key, json.dumps(report.as_dict(), sort_keys=True))


if __name__ == "__main__":
    main()
