"""Compare engine structure constants with the double Grothendieck oracle in type A.

    python scripts/oracle_check.py 3
"""

import argparse
import time

from ktschubert import FlagK, WeylGroup, build_root_system
from ktschubert.oracle import oracle_structure_constants


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("rank", type=int, nargs="?", default=3, choices=[1, 2, 3])
    args = ap.parse_args()
    t0 = time.perf_counter()
    K = FlagK(WeylGroup(build_root_system("A", args.rank)))
    mismatches = 0
    for u in K.W:
        for v in K.W:
            if K.structure_constants(u, v).coefficients != oracle_structure_constants(K, u, v).coefficients:
                mismatches += 1
                print(f"mismatch at ({u.label}, {v.label})")
    print(f"A{args.rank}: {len(K.W) ** 2} pairs, {mismatches} mismatches, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
