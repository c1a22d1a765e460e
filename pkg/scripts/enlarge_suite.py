"""Seeded random extension instances, each checked exactly; prints a summary."""

import argparse
import time

from fpfcolor.enlarge import enlarge
from fpfcolor.instances import random_enlarge_instance


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-dim", type=int, default=50)
    args = ap.parse_args(argv)
    t = time.perf_counter()
    ok = total = 0
    for n in (1, 2):
        for seed in range(args.per_dim):
            k, pairs = random_enlarge_instance(seed, n)
            try:
                res = enlarge(k, pairs, seed=seed, check=True)
                ok += bool(res.report["checked"])
            except Exception as e:  # noqa: BLE001 - report and keep going
                print(f"n={n} seed={seed}: {type(e).__name__}: {e}")
            total += 1
    print(f"{ok}/{total} passed in {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
