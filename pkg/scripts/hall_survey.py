"""Random posets: how often the open intervals have homology outside one degree.

Cross-checks mu against the reduced Euler characteristic along the way.

    python3 scripts/hall_survey.py --count 500 --size 8
"""
import argparse
import random
from collections import Counter

from mobius import poset, topology
from mobius.generators import PosetConfig, random_poset


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--size", type=int, default=8)
    ap.add_argument("--density", type=float, default=0.4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cfg = PosetConfig(max_size=args.size, density=args.density)
    values = Counter()
    spread = Counter()
    for _ in range(args.count):
        p = random_poset(rng, cfg, size=args.size)
        mu = poset.mobius(p)
        for x, y in p.intervals():
            if x == y:
                continue
            cx = topology.open_interval_complex(p, x, y)
            ranks = {n: r for n, r in topology.homology_ranks(cx).items() if r}
            assert mu[(x, y)] == topology.euler_from_homology(cx)
            values[mu[(x, y)]] += 1
            spread[len(ranks)] += 1
    print("mu value histogram:")
    for v in sorted(values):
        print(f"  {str(v):>4}: {values[v]}")
    print("number of nonzero reduced homology degrees per interval:")
    for k in sorted(spread):
        print(f"  {k}: {spread[k]}")


if __name__ == "__main__":
    main()
