"""Target dimensions of the three constructions over generated families.

Writes one CSV per family to the output directory and prints a summary.
The glued fan shows the trade-off: greene's q follows the maximum degree,
spanning's p + q follows the edge count, and gluing depends on (n, d) only.

    python scripts/dimension_table.py --out results/
"""

import argparse
import csv
from pathlib import Path

from indefembed.cli import BENCH_COLUMNS, bench_rows

PLAN = {
    "skeleton": [4, 5, 6, 7, 8],
    "grid": [3, 4, 5, 6],
    "glued-fan": [1, 2, 3],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-gluing", action="store_true", help="gluing is the slowest column")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    methods = ("greene", "spanning") if args.skip_gluing else ("greene", "spanning", "gluing")
    for family, sizes in PLAN.items():
        rows = list(bench_rows(family, sizes, args.seed, methods))
        with open(out / f"{family}.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
            w.writeheader()
            w.writerows(rows)
        print(family)
        for r in rows:
            print(f"  size {r['size']:>2} {r['method']:9s} d={r['d']} |E|={r['E']:>3} "
                  f"p={r['p']:>5} q={r['q']:>5} residual {r['residual']} {r['millis']} ms")


if __name__ == "__main__":
    main()
