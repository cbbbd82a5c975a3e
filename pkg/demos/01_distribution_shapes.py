"""Tour of the density and hazard shapes the family can take.

The five parameters buy a lot of flexibility: densities can be decreasing
or unimodal, and the hazard can be increasing, decreasing, or bathtub
shaped.  This script evaluates each regime on a grid and prints a compact
text summary; pipe the same grids out of `egwgd curves` for plotting.
"""

import numpy as np

from egwgd import EgwgParams, cdf, hazard, median, mode, pdf, quantile

CASES = [
    ("decreasing density (Gompertz, a > 1)", EgwgParams(2.0, 0.0, 1.0, 1.0, 1.0), (0.05, 4.0)),
    ("unimodal density (Gompertz, a < 1)", EgwgParams(0.5, 0.0, 1.0, 1.0, 1.0), (0.05, 4.0)),
    ("increasing hazard", EgwgParams(1.0, 0.0, 1.0, 1.0, 1.0), (0.1, 3.0)),
    ("decreasing hazard", EgwgParams(1e-3, 0.1, 0.05, 0.3, 0.4), (0.1, 10.0)),
    ("bathtub hazard (Aarset-style fit)",
     EgwgParams(0.000085, 0.128, 0.401, 0.69901, 0.246), (0.5, 90.0)),
]


def trend(values):
    d = np.diff(values)
    signs = np.sign(d[d != 0.0])
    if np.all(signs > 0):
        return "increasing"
    if np.all(signs < 0):
        return "decreasing"
    flips = np.sum(np.diff(signs) != 0)
    if flips == 1 and signs[0] < 0:
        return "bathtub (decreasing, then increasing)"
    if flips == 1 and signs[0] > 0:
        return "unimodal (increasing, then decreasing)"
    return f"mixed ({flips} turning points)"


def main():
    for label, p, (lo, hi) in CASES:
        grid = np.linspace(lo, hi, 160)
        f = np.atleast_1d(pdf(p, grid))
        h = np.atleast_1d(hazard(p, grid))
        m = mode(p)
        print(f"\n{label}")
        print(f"  params: {p.to_dict()}")
        print(f"  density on [{lo}, {hi}]: {trend(f)}")
        print(f"  hazard  on [{lo}, {hi}]: {trend(h)}")
        print(f"  median {median(p):.5g}, 10% {quantile(p, 0.1):.5g}, "
              f"90% {quantile(p, 0.9):.5g}")
        print("  mode:", "at the left boundary (0)" if m == 0.0 else f"{m:.5g}")
        print(f"  F(median) check: {cdf(p, median(p)):.12f}")


if __name__ == "__main__":
    main()
