"""Run every claim suite over a list of groups and print a summary table.

    python scripts/run_claims.py A2 B2 G2 A3
"""

import argparse
import time

from ktschubert import (
    FlagK,
    SubtorusBasis,
    WeylGroup,
    build_root_system,
    verify_dualizing,
    verify_grku_prime,
    verify_grra,
    verify_richardson_family,
)


def parse_group(name: str) -> tuple[str, int]:
    return name[0].upper(), int(name[1:])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("groups", nargs="*", default=["A2", "B2", "G2", "A3"])
    args = ap.parse_args()
    for name in args.groups:
        t0 = time.perf_counter()
        K = FlagK(WeylGroup(build_root_system(*parse_group(name))))
        bases = [SubtorusBasis.identity(K.n), SubtorusBasis.ones_row(K.n)]
        for report in (
            verify_grra(K),
            verify_grku_prime(K),
            verify_dualizing(K),
            verify_richardson_family(K, bases),
        ):
            print(report.summary())
        print(f"{name}: {time.perf_counter() - t0:.1f}s\n")


if __name__ == "__main__":
    main()
