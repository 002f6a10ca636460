"""Moment-growth sequence a_n = M(b n)^(1/n) / n against its limit b / e.

The leading correction is the Stirling factor (2 pi n)^(1/(2n)), printed
alongside for comparison.
"""

import math

from genstable.mellin import moment_growth_sequence
from genstable.params import GenStableParams


def main():
    sets = [GenStableParams(2, 1), GenStableParams(3, 1), GenStableParams(1.5, 1)]
    print(f"{'n':>7s}" + "".join(f"{f'({p.m:g},{p.alpha:g})':>12s}" for p in sets) + f"{'stirling':>12s}")
    for n in (10, 50, 200, 400, 1000, 10_000, 100_000):
        row = [moment_growth_sequence(p, n) * math.e / p.b - 1.0 for p in sets]
        stirling = (2.0 * math.pi * n) ** (1.0 / (2.0 * n)) - 1.0
        print(f"{n:7d}" + "".join(f"{r:12.5f}" for r in row) + f"{stirling:12.5f}")


if __name__ == "__main__":
    main()
