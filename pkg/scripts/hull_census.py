"""Count how random points split between the convex, polynomial and rational hulls."""

import argparse

import numpy as np

from symcr.domain_geometry import hull_membership, hull_split
from symcr.jts import Element, parse_system
from symcr.spectral import element_with_singular_values


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("system", nargs="?", default="I:2,2xI:2,1")
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    s = parse_system(args.system)
    split = hull_split(s)
    rng = np.random.default_rng(args.seed)
    counts = dict(convex=0, polynomial=0, rational=0)
    for _ in range(args.samples):
        blocks = []
        for f in s.factors:
            lams = np.sort(rng.choice([1.0, rng.uniform(0, 1)], f.rank))[::-1]
            blocks.append(element_with_singular_values(f, lams, rng).matrix)
        z = Element(s, tuple(blocks))
        for k in counts:
            counts[k] += hull_membership(s, z, k, split=split)
    print(f"tube factors {split.tube}, non-tube factors {split.nontube}")
    for k, v in counts.items():
        print(f"{k:>10}: {v}/{args.samples}")


if __name__ == "__main__":
    main()
