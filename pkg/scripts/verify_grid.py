"""Check every feasible tuple of the small grid end to end.

usage: python3 scripts/verify_grid.py [--length N] [--json out.json]
"""
import argparse
import itertools
import json
import time

from kneading.cli import verify_tuple
from kneading.forge import FeasibilityQuery, feasible


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=200_000)
    ap.add_argument("--D-max", dest="D_max", type=int, default=10)
    ap.add_argument("--json")
    args = ap.parse_args()
    rows, t0 = {}, time.time()
    for a, b in itertools.product((1, 2, 3), repeat=2):
        for n, m in itertools.product(range(1, 6), repeat=2):
            if not feasible(FeasibilityQuery(a, b, n, m)):
                continue
            r = verify_tuple(a, b, n, m, args.length, args.D_max)
            bad = [k for k, v in r.items() if v is False]
            rows[f"{a},{b},{n},{m}"] = bad
            print(f"({a},{b},{n},{m}) {'ok' if not bad else 'FAILED ' + ','.join(bad)}")
    fails = sum(bool(v) for v in rows.values())
    print(f"{len(rows)} tuples, {fails} failing, {time.time() - t0:.0f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 1 if fails else 0


if __name__ == "__main__":
    raise SystemExit(main())
