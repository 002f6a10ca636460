"""Decide the Thorin-density constant from the Stieltjes identity.

For each convention print the worst relative gap between
``int phi(u)/(u + lam) du`` and the Bessel-K ratio over a grid of lam.
"""

import numpy as np

from genstable.fracops import CONVENTIONS, THORIN_CONSTANTS, default_convention, stieltjes_check


def main():
    lams = np.geomspace(0.1, 100.0, 12)
    for conv in CONVENTIONS:
        worst = max(
            abs(integral / ratio - 1.0)
            for alpha in (0.5, 1.0, 2.0)
            for ratio, integral in (stieltjes_check(alpha, float(lam), conv) for lam in lams)
        )
        print(f"{conv:8s} C = {THORIN_CONSTANTS[conv]:.10f}  worst relative gap {worst:.3e}")
    print(f"selected: {default_convention()}")


if __name__ == "__main__":
    main()
