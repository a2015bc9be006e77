"""Command-line interface: enumerate, check, classify, crosscheck, selftest."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from contextlib import contextmanager

from .errors import BudgetExceeded, NotPrimePower, PrecisionExhausted
from .exactmath import DEFAULT_CAP, DEFAULT_PREC
from .weil import WeilCandidate, check_prime_power, classify_real_roots, expand, has_real_root, is_weil

EXIT_OK = 0
EXIT_NONMEMBER = 1
EXIT_USAGE = 2
EXIT_NOT_PRIME_POWER = 3
EXIT_PRECISION = 4
EXIT_DISCREPANCY = 5
EXIT_BUDGET = 6
EXIT_SELFTEST = 7

FILTER_ALIASES = {"all": "all", "real-roots": "real-roots-only", "real-roots-only": "real-roots-only",
                  "no-real-roots": "no-real-roots"}


class UsageError(Exception):
    pass


# records ----------------------------------------------------------------------------


def output_record(c: WeilCandidate, real_root: bool | None = None) -> dict:
    cls = classify_real_roots(c)
    if real_root is None:
        real_root = cls.kind != "none"
    return {
        "q": c.q,
        "g": c.g,
        "a": list(c.a),
        "coeffs": list(expand(c)),
        "real_root": real_root,
        "class": cls.render(),
    }


CSV_FIELDS = ["q", "g", "a1", "a2", "a3", "a4", "a5", "real_root", "class"]


def _csv_row(rec: dict) -> list:
    a = rec["a"] + [""] * (5 - len(rec["a"]))
    return [rec["q"], rec["g"], *a, str(rec["real_root"]).lower(), rec["class"]]


@contextmanager
def _sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# precision --------------------------------------------------------------------------


def _prec_settings(args) -> tuple[int, int]:
    prec = DEFAULT_PREC
    env = os.environ.get("WEILPOLY_PREC")
    if env:
        try:
            prec = int(env)
        except ValueError:
            raise UsageError(f"WEILPOLY_PREC must be an integer, got {env!r}") from None
    if getattr(args, "prec", None) is not None:
        prec = args.prec
    cap = args.prec_cap if getattr(args, "prec_cap", None) is not None else max(DEFAULT_CAP, prec)
    if prec < 2 or cap < 2:
        raise UsageError("precision must be at least 2 bits")
    return min(prec, cap), cap


def _parse_a(text: str, g: int) -> tuple[int, ...]:
    try:
        a = tuple(int(x) for x in text.split(",")) if text.strip() else ()
    except ValueError:
        raise UsageError(f"--a must be comma-separated integers, got {text!r}") from None
    if len(a) != g:
        raise UsageError(f"--a needs {g} entries, got {len(a)}")
    return a


# commands ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    from .enumeration import EnumConfig, iter_members, enumerate_weil

    prec, cap = _prec_settings(args)
    cfg = EnumConfig(
        args.q,
        args.g,
        mode=args.mode,
        filter=FILTER_ALIASES[args.filter],
        prec=prec,
        prec_cap=cap,
        sort_theta=not args.unsorted_theta,
        jobs=args.jobs,
    )
    t0 = time.perf_counter()
    members = enumerate_weil(cfg) if cfg.jobs > 1 else iter_members(cfg)
    n = n_real = 0
    with _sink(args.out) as out:
        writer = csv.writer(out, lineterminator="\n") if args.format == "csv" else None
        if writer:
            writer.writerow(CSV_FIELDS)
        for m in members:
            rec = output_record(WeilCandidate(cfg.q, cfg.g, m.a), m.real_root)
            n += 1
            n_real += m.real_root
            if writer:
                writer.writerow(_csv_row(rec))
            else:
                out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    print(f"count={n} real_root={n_real} elapsed={time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    c = WeilCandidate(args.q, args.g, _parse_a(args.a, args.g))
    member = is_weil(c)
    rec = {"q": c.q, "g": c.g, "a": list(c.a), "member": member}
    if member:
        rec["real_root"] = has_real_root(c)
        rec["class"] = classify_real_roots(c).render()
    else:
        rec["real_root"] = None
        rec["class"] = None
    print(json.dumps(rec, separators=(",", ":")))
    return EXIT_OK if member else EXIT_NONMEMBER


def cmd_classify(args) -> int:
    c = WeilCandidate(args.q, args.g, _parse_a(args.a, args.g))
    if not is_weil(c):
        print(f"{c} is not a q-Weil polynomial", file=sys.stderr)
        return EXIT_NONMEMBER
    cls = classify_real_roots(c)
    print(json.dumps({"q": c.q, "g": c.g, "a": list(c.a), "class": cls.render(),
                      "kind": cls.kind, "k": cls.k, "l": cls.l, "m": cls.m,
                      "cofactor": list(cls.cofactor.a)}, separators=(",", ":")))
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    from .crosscheck import compare, sample_check
    from .enumeration import EnumConfig, enumerate_weil

    if args.sample:
        members = [m.a for m in enumerate_weil(EnumConfig(args.q, args.g, jobs=args.jobs))]
        rep = sample_check(args.q, args.g, members, args.sample, seed=args.seed)
        out = {"q": rep.q, "g": rep.g, "samples": rep.samples, "prescreened": rep.prescreened,
               "members_hit": rep.members_hit, "disagreements": [list(a) for a in rep.disagreements],
               "elapsed": round(rep.elapsed, 3), "ok": rep.ok}
        print(json.dumps(out))
        return EXIT_OK if rep.ok else EXIT_DISCREPANCY
    rep = compare(args.q, args.g, oracle=args.oracle, budget=args.budget,
                  paper_literal=args.paper_literal, jobs=args.jobs)
    print(json.dumps(rep.to_json()))
    return EXIT_OK if rep.ok else EXIT_DISCREPANCY


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    prec, cap = _prec_settings(args)
    failures = run_selftest(prec=prec, cap=cap, fault=args.inject_fault, log=sys.stderr)
    if failures:
        for name in failures:
            print(f"FAILED: {name}", file=sys.stderr)
        return EXIT_SELFTEST
    print("selftest passed", file=sys.stderr)
    return EXIT_OK


# parser -----------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weilpoly", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def qg(sp, gmax=5):
        sp.add_argument("--q", type=int, required=True, help="prime power")
        sp.add_argument("--g", type=int, required=True, choices=range(1, gmax + 1), metavar="G")

    def precision(sp):
        sp.add_argument("--prec", type=_positive, help="starting precision in bits (env WEILPOLY_PREC)")
        sp.add_argument("--prec-cap", type=_positive, help="precision cap in bits")

    e = sub.add_parser("enumerate", help="list W_q(g)")
    qg(e)
    precision(e)
    e.add_argument("--mode", choices=["theorem", "safe"], default="theorem")
    e.add_argument("--filter", choices=sorted(FILTER_ALIASES), default="all")
    e.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    e.add_argument("--out", help="write records to this file instead of stdout")
    e.add_argument("--jobs", type=_positive, default=1)
    e.add_argument("--unsorted-theta", action="store_true", help=argparse.SUPPRESS)
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("check", help="decide membership of one candidate")
    qg(c, gmax=50)
    c.add_argument("--a", required=True, help="comma-separated a_1..a_g")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("classify", help="real-root classification of a member")
    qg(k, gmax=50)
    k.add_argument("--a", required=True)
    k.set_defaults(func=cmd_classify)

    x = sub.add_parser("crosscheck", help="compare the enumeration with the brute-force oracle")
    qg(x)
    x.add_argument("--budget", type=_positive, help="maximum number of oracle candidates")
    x.add_argument("--sample", type=_positive, help="random box samples instead of a full comparison")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--oracle", choices=["trace", "box", "unpruned"], default="trace")
    x.add_argument("--paper-literal", action="store_true",
                   help="diagnostic: closed-form predicates with the signs as printed")
    x.add_argument("--jobs", type=_positive, default=1)
    x.set_defaults(func=cmd_crosscheck)

    s = sub.add_parser("selftest", help="run the embedded invariant suites")
    precision(s)
    s.add_argument("--inject-fault", choices=["unsorted-theta"], help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    """Allow ``--a -4,10``: argparse would read the value as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--a" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--a={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        check_prime_power(args.q) if hasattr(args, "q") else None
        return args.func(args)
    except NotPrimePower as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PRIME_POWER
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
