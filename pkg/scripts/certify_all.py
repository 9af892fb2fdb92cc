"""Run every certification for r = 1..R and write a JSON summary.

    python3 scripts/certify_all.py --max-r 3 --out certify.json
"""

from __future__ import annotations

import argparse
import json
import time

from cyclobmw.admissibility import ParameterSet, verify_equivalence
from cyclobmw.bmw2 import check_confluence, build_table, default_instance, freeness_certificate
from cyclobmw.repn import build_module, eigen_split, verify_module_relations


def certify(r: int, symbolic_module: bool, seed: int) -> dict:
    row: dict = {"r": r}
    t0 = time.perf_counter()
    eq = verify_equivalence(r)
    row["equivalence"] = eq.all_true and eq.solver_matches_eta
    t1 = time.perf_counter()
    cert = freeness_certificate(r, default_instance(r))
    row["free"] = cert.free
    row["triples"] = cert.associativity.triples
    t2 = time.perf_counter()
    row["confluence"] = check_confluence(build_table(r, default_instance(r)), seed=seed).holds
    params = ParameterSet.symbolic(r) if symbolic_module else default_instance(r)
    module = build_module(params)
    row["module"] = verify_module_relations(module).all_pass
    row["eigen"] = eigen_split(module).all_pass
    t3 = time.perf_counter()
    row["seconds"] = {"equivalence": round(t1 - t0, 3), "freeness": round(t2 - t1, 3),
                      "module": round(t3 - t2, 3)}
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--numeric-module", action="store_true", help="check M at the numeric instance only")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write the summary here as JSON")
    args = ap.parse_args()

    rows = []
    for r in range(1, args.max_r + 1):
        row = certify(r, not args.numeric_module, args.seed)
        rows.append(row)
        flags = " ".join(f"{k}={'ok' if row[k] else 'FAIL'}"
                         for k in ("equivalence", "free", "confluence", "module", "eigen"))
        print(f"r={r} rank={3 * r * r} {flags} {row['seconds']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
