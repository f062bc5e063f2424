"""Essential Möbius values of the truncated injection category, computed three ways.

    python3 scripts/injection_table.py --max 5
"""
import argparse
import time

from mobius import decomp, fincat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=5)
    args = ap.parse_args()

    t = time.perf_counter()
    cat = fincat.injection_category(args.max)
    print(f"{cat} built in {time.perf_counter() - t:.2f}s")
    rec = fincat.essential_mobius(cat)
    chains = fincat.essential_mobius_closed_form(cat)
    sums = decomp.groupoid_decomposition_sums(cat)
    print(f"{'n':>2} {'m':>2} {'recursion':>10} {'chains':>10} {'groupoid':>10} {'closed':>10}")
    for n in range(args.max + 1):
        for m in range(n, args.max + 1):
            row = [rec[(n, m)], chains[(n, m)], sums.get((n, m), rec[(n, m)]),
                   fincat.injection_mobius_value(n, m)]
            flag = "" if len(set(row)) == 1 else "  MISMATCH"
            print(f"{n:>2} {m:>2} " + " ".join(f"{str(v):>10}" for v in row) + flag)

    w = decomp.filling_witness(cat)
    if w:
        a1, b1, a2, b2 = w
        print(f"literal filling fails: {a1} then {b1}  vs  {a2} then {b2}")
    print("class algebra defects:", decomp.class_associativity_defects(cat))


if __name__ == "__main__":
    main()
