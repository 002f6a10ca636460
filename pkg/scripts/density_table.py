"""Tabulate the density by every applicable method on a log grid.

    python scripts/density_table.py 2.7 2 --lo 0.2 --hi 20 --count 9
"""

import argparse

import numpy as np

from genstable.density import density_values, has_closed_form, series_families
from genstable.errors import PreconditionError
from genstable.params import GenStableParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("m", type=float)
    ap.add_argument("alpha", type=float)
    ap.add_argument("--lo", type=float, default=0.2)
    ap.add_argument("--hi", type=float, default=20.0)
    ap.add_argument("--count", type=int, default=9)
    args = ap.parse_args()
    p = GenStableParams(args.m, args.alpha)
    x = np.geomspace(args.lo, args.hi, args.count)
    methods = (["closed"] if has_closed_form(p) else []) + [f"series-{f}" for f in series_families(p)]
    methods.append("mellin-inversion")
    cols = {}
    for method in methods:
        try:
            cols[method] = density_values(p, x, method)
        except PreconditionError as exc:
            print(f"# {method}: {exc}")
    print("x".rjust(12) + "".join(f"{m:>26s}{'rel err':>10s}" for m in cols))
    for i, xi in enumerate(x):
        line = f"{xi:12.5g}"
        for v, e, _ in cols.values():
            line += f"{v[i]:26.17g}{e[i] / v[i] if v[i] > 0 else np.inf:10.1e}"
        print(line)


if __name__ == "__main__":
    main()
