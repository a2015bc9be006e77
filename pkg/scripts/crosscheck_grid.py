"""Compare theorem-mode enumeration with the brute-force oracle over a grid
of (q, g) and print one line per pair.

    python scripts/crosscheck_grid.py --q 2 3 4 5 7 8 9 --g 1 2 3
    python scripts/crosscheck_grid.py --q 2 --g 4 --oracle trace
    python scripts/crosscheck_grid.py --q 2 3 --g 2 3 --paper-literal
"""

import argparse
import json
import sys

from weilpoly.crosscheck import compare


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7, 8, 9])
    ap.add_argument("--g", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--oracle", choices=["trace", "box", "unpruned"], default="trace")
    ap.add_argument("--paper-literal", action="store_true")
    ap.add_argument("--no-safe", action="store_true", help="skip the safe-mode comparison")
    ap.add_argument("--json", action="store_true", help="print full reports as JSON lines")
    args = ap.parse_args()

    failed = 0
    for g in args.g:
        for q in args.q:
            rep = compare(q, g, oracle=args.oracle, paper_literal=args.paper_literal,
                          check_safe=not args.no_safe)
            failed += not rep.ok
            if args.json:
                print(json.dumps(rep.to_json()), flush=True)
            else:
                print(f"q={q:<3} g={g}  theorem={rep.count_theorem:<7} oracle={rep.count_oracle:<7} "
                      f"missing={len(rep.missing):<5} spurious={len(rep.spurious):<5} "
                      f"real={rep.realroot_count:<5} {rep.elapsed:8.1f}s  {'ok' if rep.ok else 'MISMATCH'}",
                      flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
