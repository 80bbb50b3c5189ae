"""Print the filtration length kappa of the TETT algebras next to the floor formula."""

import argparse

from symcr.lie_construct import build_tett, filtration, tett_kappa_formula


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=9)
    args = ap.parse_args()
    print(f"{'n':>3} {'d':>3} {'kappa':>6} {'formula':>8}")
    for n in range(2, args.nmax + 1):
        for d in range(1, n // 2 + 1):
            data = build_tett(n, d)
            k = filtration(data.g, data.h).kappa
            f = tett_kappa_formula(n, d)
            print(f"{n:>3} {d:>3} {k:>6} {f:>8}{'' if k == f else '  *'}")


if __name__ == "__main__":
    main()
