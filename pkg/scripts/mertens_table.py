"""Mertens function M(n) at powers of ten and the ratio |M(n)| / sqrt(n) (floats only for display).

    python3 scripts/mertens_table.py --bound 1000000
"""
import argparse
from itertools import accumulate

from mobius import arith


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=10 ** 6)
    args = ap.parse_args()

    mu = arith.mobius_sieve(args.bound)
    m = list(accumulate(mu))
    worst = max(range(100, args.bound + 1), key=lambda n: abs(m[n]) / n ** 0.5)
    k = 10
    while k <= args.bound:
        print(f"M({k}) = {m[k]:>6}   |M|/sqrt = {abs(m[k]) / k ** 0.5:.4f}")
        k *= 10
    print(f"largest ratio for 100 <= n <= {args.bound}: n = {worst}, M = {m[worst]}, "
          f"ratio {abs(m[worst]) / worst ** 0.5:.4f}")


if __name__ == "__main__":
    main()
