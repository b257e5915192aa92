#!/usr/bin/env python3
"""Forcing-number battery over all 1x3 integer matrices with entries in
{-3..3} minus 0.

For each matrix: decide the columns property, then run the 2-color forcing
search (staged caps for matrices with the property, a single cap for those
without).  Emits one CSV row per matrix: entries, columns property,
forced-at N (empty if not forced below the cap), cap, nodes.
"""

import argparse
import csv
import sys
from itertools import product

from partreg.linalg import Matrix
from partreg.regularity import columns_property
from partreg.search import forcing_number


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-k", type=int, default=2, help="number of colors")
    ap.add_argument("--absent-cap", type=int, default=50)
    ap.add_argument("--present-caps", type=int, nargs="+",
                    default=[25, 50, 100, 200])
    ap.add_argument("--out", default="-", help="CSV path, - for stdout")
    args = ap.parse_args()

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(fh)
    writer.writerow(["a", "b", "c", "columns_property", "k", "cap",
                     "forced_at", "nodes"])
    entries = [e for e in range(-3, 4) if e != 0]
    for combo in product(entries, repeat=3):
        m = Matrix.from_rows([combo])
        has_cp = columns_property(m) is not None
        if has_cp:
            result = None
            for cap in args.present_caps:
                result = forcing_number(m, args.k, cap)
                if result.forced_at is not None:
                    break
        else:
            result = forcing_number(m, args.k, args.absent_cap)
        writer.writerow([*combo, int(has_cp), args.k, result.cap,
                         result.forced_at if result.forced_at else "",
                         result.nodes])
    if fh is not sys.stdout:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
