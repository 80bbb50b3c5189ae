"""Probe the Levi cone at random maximal tripotents of a few triple systems."""

import argparse

from symcr.domain_geometry import levi_cone_probe
from symcr.jts import parse_system
from symcr.spectral import random_tripotent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("systems", nargs="*", default=["I:2,1", "I:3,2", "II:5", "I:2,2"])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for spec in args.systems:
        s = parse_system(spec)
        r = levi_cone_probe(random_tripotent(s, s.rank, args.seed), args.samples, args.seed)
        worst = max(r.residuals) if r.residuals else float("nan")
        print(f"{spec:>8}: ok={r.ok} worst residual={worst:.2e} {r.reason}")


if __name__ == "__main__":
    main()
