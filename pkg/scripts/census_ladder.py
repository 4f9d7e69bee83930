"""Class frequencies on the census slices as the coefficient range M grows.

For each M the measured fraction is printed next to the exact probability
under uniform integer coefficients:

* slice N, fold:           P(b2 != 0)             = 1 - 1/(2M+1)
* slice N and b2=0, cusp:  P(b3 != 0 and c != 0)  = (1 - 1/(2M+1))^2
* unconstrained, regular:  P(det of the linear part != 0), by enumeration

    python scripts/census_ladder.py --ranges 9,20,50,100 --samples 10000
"""
import argparse
from fractions import Fraction

import numpy as np

from plansing.census import CensusSpec, run_census
from plansing.germclass import Tag

SLICES = [("all", (), Tag.REGULAR), ("N", ("N",), Tag.FOLD), ("N+b2=0", ("N", "b2=0"), Tag.CUSP)]


def singular_matrix_probability(m: int) -> Fraction:
    """P(ad - bc = 0) for a, b, c, d uniform in [-m, m], by counting products."""
    vals = np.arange(-m, m + 1)
    prods = np.multiply.outer(vals, vals).ravel()
    _, counts = np.unique(prods, return_counts=True)
    same = int((counts.astype(object) ** 2).sum())
    return Fraction(same, (2 * m + 1) ** 4)


def exact(label: str, m: int) -> Fraction:
    miss = Fraction(1, 2 * m + 1)
    if label == "N":
        return 1 - miss
    if label == "N+b2=0":
        return (1 - miss) ** 2
    return 1 - singular_matrix_probability(m)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ranges", default="9,20,50,100")
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print(f"{'M':>4}  {'slice':<8} {'class':<8} {'measured':>9} {'exact':>9}")
    for m in (int(v) for v in args.ranges.split(",")):
        for label, constraints, tag in SLICES:
            spec = CensusSpec(coeff_range=m, constraints=constraints, samples=args.samples, seed=args.seed)
            res = run_census(spec, args.workers)
            frac = res.tags[tag] / res.total
            print(f"{m:>4}  {label:<8} {tag.value:<8} {frac:>9.4f} {float(exact(label, m)):>9.4f}")


if __name__ == "__main__":
    main()
