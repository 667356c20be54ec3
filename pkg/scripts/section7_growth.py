"""Cylinder counts for the binary-tree example, written as CSV.

usage: python3 scripts/section7_growth.py [--length N] [--max-depth D] [--out counts.csv]
"""
import argparse
import csv
import sys

from kneading.forge import ConstructionParams, build_prefix
from kneading.language import cantor_growth_test, central_cylinders, omega_words


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=2_000_000)
    ap.add_argument("--max-depth", type=int, default=14)
    ap.add_argument("--out")
    args = ap.parse_args()
    K = build_prefix(ConstructionParams.section7(), args.length)
    depths = range(3, args.max_depth + 1)
    central = {d: len(central_cylinders(K, d)) for d in depths}
    omega = {d: len(omega_words(K, d)) for d in depths}
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(["depth", "central", "omega"])
    for d in depths:
        w.writerow([d, central[d], omega[d]])
    if args.out:
        fh.close()
    print(f"central: {cantor_growth_test(central)}  omega: {cantor_growth_test(omega)}",
          file=sys.stderr)


if __name__ == "__main__":
    main()
