"""Perturb one stored omega_k at a time and record which checks notice.

For each r and each k < r, omega_k at the numeric u-admissible instance is
shifted by ``--delta``.  Every row should report all four checks false; a
true entry would mean some condition fails to detect the change.

    python3 scripts/perturbation_sweep.py --max-r 3 --delta 1/2
"""

from __future__ import annotations

import argparse
import csv
import sys

from cyclobmw.admissibility import check_admissible, check_u_admissible, check_weak
from cyclobmw.bmw2 import default_instance, freeness_certificate
from cyclobmw.repn import build_module, verify_module_relations
from cyclobmw.ring import format_rational, parse_rational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--delta", default="1", help="exact rational shift, e.g. 1 or -3/2")
    args = ap.parse_args()
    delta = parse_rational(args.delta)

    writer = csv.writer(sys.stdout)
    writer.writerow(["r", "k", "delta", "weak", "admissible", "u_admissible", "module", "free", "first_module_failure"])
    for r in range(1, args.max_r + 1):
        base = default_instance(r)
        for k in range(r):
            p = base.with_omega(k, base.omega_at(k) + delta)
            mod = verify_module_relations(build_module(p))
            writer.writerow([
                r, k, format_rational(delta),
                check_weak(p).holds,
                check_admissible(p).holds,
                check_u_admissible(p).holds,
                mod.all_pass,
                freeness_certificate(r, p).free,
                mod.failures()[0].relation if mod.failures() else "",
            ])


if __name__ == "__main__":
    main()
