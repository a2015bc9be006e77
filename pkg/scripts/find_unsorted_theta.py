"""Search for g = 4 candidates whose membership flips when the theta set is
used in construction order instead of sorted order."""

import argparse

from weilpoly.enumeration import EnumConfig, enumerate_weil
from weilpoly.weil import WeilCandidate, is_weil


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--limit", type=int, default=5)
    args = ap.parse_args()
    for q in args.q:
        good = {m.a for m in enumerate_weil(EnumConfig(q, 4))}
        bad = {m.a for m in enumerate_weil(EnumConfig(q, 4, sort_theta=False))}
        spurious = sorted(a for a in bad - good if not is_weil(WeilCandidate(q, 4, a)))
        missing = sorted(good - bad)
        print(f"q={q}: unsorted admits {len(spurious)} non-Weil, drops {len(missing)} members")
        for a in spurious[: args.limit]:
            print("  spurious", a)
        for a in missing[: args.limit]:
            print("  missing ", a)


if __name__ == "__main__":
    main()
