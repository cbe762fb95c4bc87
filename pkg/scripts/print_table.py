"""Print the structure constants of one basis, one product per line, with y-expansions.

    python scripts/print_table.py A2 --basis xi_upper
"""

import argparse

from ktschubert import FlagK, NotInYRing, WeylGroup, build_root_system
from ktschubert.positivity import to_y

VARIABLES = {"O_upper": "minus", "xi_upper": "minus", "dualizing": "plus"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("group", help="e.g. A2, B2, G2")
    ap.add_argument("--basis", default="O_upper", choices=sorted(VARIABLES))
    args = ap.parse_args()
    K = FlagK(WeylGroup(build_root_system(args.group[0].upper(), int(args.group[1:]))))
    var = "y" if VARIABLES[args.basis] == "minus" else "y'"
    print(f"# {K.rs.name}, basis {args.basis}; {var}_i = e^({'-' if var == 'y' else ''}alpha_i) - 1")
    for u in K.W:
        for v in K.W:
            if v.index < u.index:
                continue  # products commute
            for w, c in K.structure_constants(u, v, args.basis).items():
                try:
                    y = to_y(K, c, None, VARIABLES[args.basis])
                except NotInYRing:
                    y = "not in the y-ring"
                print(f"{u.label:>10} * {v.label:<10} -> {w.label:<12} {y}")


if __name__ == "__main__":
    main()
