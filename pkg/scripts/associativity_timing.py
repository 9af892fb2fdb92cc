"""Time the full associativity sweep over (3r^2)^3 basis triples.

    python3 scripts/associativity_timing.py --max-r 5

Set CYCLOBMW_THREADS to spread the sweep over worker processes.
"""

from __future__ import annotations

import argparse
import time

from cyclobmw.bmw2 import build_table, check_associativity, default_instance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-r", type=int, default=4)
    args = ap.parse_args()
    print(f"{'r':>2} {'rank':>5} {'triples':>10} {'build s':>8} {'sweep s':>8} holds")
    for r in range(1, args.max_r + 1):
        t0 = time.perf_counter()
        table = build_table(r, default_instance(r))
        t1 = time.perf_counter()
        rep = check_associativity(table)
        t2 = time.perf_counter()
        print(f"{r:>2} {3 * r * r:>5} {rep.triples:>10} {t1 - t0:>8.3f} {t2 - t1:>8.3f} {rep.holds}")


if __name__ == "__main__":
    main()
