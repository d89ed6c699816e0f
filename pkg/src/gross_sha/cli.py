"""Command line driver: ``gross-sha compute|table|verify|anchor``.

Exit codes: 0 ok, 1 verify failure, 2 integrality failure, 3 eps ambiguity,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor, as_completed

from .numerics import PrecisionContext
from .quadfield import FieldParams
from .records import RunRecord, error_record, load_cache, record_from_result, write_csv

EXIT_OK, EXIT_VERIFY, EXIT_INTEGRALITY, EXIT_AMBIGUITY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3, 64, 74

log = logging.getLogger("gross_sha")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def run_one(q: int, precision: int) -> RunRecord:
    """Compute one q and return its record; failures become error records."""
    from .pipeline import compute

    ctx = PrecisionContext(precision)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            res = compute(q, ctx)
        except Exception as exc:  # recorded, the sweep continues
            return error_record(q, precision, f"{type(exc).__name__}: {exc}")
    return record_from_result(res, ctx)


def cmd_compute(args) -> int:
    from .pipeline import EpsilonAmbiguity, compute

    try:
        FieldParams(args.q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ctx = PrecisionContext(args.precision)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            res = compute(args.q, ctx)
        except EpsilonAmbiguity as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_AMBIGUITY
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    rec = record_from_result(res, ctx)
    if args.json:
        print(rec.to_json())
    else:
        _print_human(rec)
    return EXIT_OK if rec.integral else EXIT_INTEGRALITY


def _print_human(rec: RunRecord) -> None:
    rows = [
        ("q", rec.q), ("q mod 8", rec.mod8), ("h", rec.h), ("j", rec.j), ("r", rec.r), ("m", rec.m),
        ("eps id", f"{rec.epsilon_id} ({rec.selection_rule})"), ("X", rec.X),
        ("L(E/H,1)", rec.L), ("Omega(q)", rec.omega), ("#Sha (analytic)", rec.sha_analytic),
        ("#Sha (rounded)", rec.sha_rounded), ("|error|", rec.abs_error),
        ("perfect square", "yes" if rec.is_square else "no"),
        ("precision", f"{rec.precision} (working {rec.working_digits})"), ("runtime ms", rec.timing.get("runtime_ms", "")),
    ]
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")
    print()
    print("per-character values:")
    for c in rec.per_char:
        im = c["L_im"]
        sign, im = ("-", im[1:]) if im.startswith("-") else ("+", im)
        print(f"  chi={c['chi']:<10} L={c['L_re']} {sign} {im}i   |W|-1={c['unitarity_residual']}")


def cmd_table(args) -> int:
    from .verify import family

    if args.mod8 not in (3, 7):
        print("error: --mod8 must be 3 or 7", file=sys.stderr)
        return EXIT_USAGE
    qs = family(args.mod8, args.qmax)
    cache_path = args.resume or (args.out + ".jsonl")
    try:
        cached = load_cache(cache_path) if args.resume else {}
        if not args.resume:
            open(cache_path, "w", encoding="utf-8").close()
        done = {q for q, rec in cached.items() if rec.error is None and rec.precision >= args.precision}
        todo = [q for q in qs if q not in done]
        with open(cache_path, "a", encoding="utf-8") as cache:

            def collect(rec: RunRecord):
                cache.write(rec.to_json() + "\n")
                cache.flush()
                cached[rec.q] = rec
                status = rec.error or f"sha={rec.sha_rounded}"
                log.info("q=%d %s", rec.q, status)

            if args.jobs > 1 and len(todo) > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    futures = [pool.submit(run_one, q, args.precision) for q in todo]
                    for fut in as_completed(futures):
                        collect(fut.result())
            else:
                for q in todo:
                    collect(run_one(q, args.precision))
        rows = [cached[q] for q in qs if q in cached and cached[q].error is None]
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh, timings=args.timings)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    failed = [q for q in qs if cached[q].error is not None]
    nonintegral = [r.q for r in rows if not r.integral]
    for q in failed:
        print(f"error: q={q}: {cached[q].error}", file=sys.stderr)
    if nonintegral:
        print(f"integrality failure for q in {nonintegral}", file=sys.stderr)
    return EXIT_INTEGRALITY if (failed or nonintegral) else EXIT_OK


def cmd_verify(args) -> int:
    from . import verify

    suite = verify.SUITES[args.suite]
    kwargs = {}
    if args.qmax is not None:
        if args.suite not in ("classgroup", "census"):
            print("error: --qmax applies to the classgroup and census suites", file=sys.stderr)
            return EXIT_USAGE
        kwargs["qmax"] = args.qmax
    if args.suite in ("lseries", "anchor"):
        kwargs["ctx"] = PrecisionContext(args.precision)
    checks = suite(**kwargs)
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print(f"{args.suite}: {sum(c.passed for c in checks)}/{len(checks)} checks, {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_anchor(args) -> int:
    from .anchor import J_INVARIANTS, anchor_report

    if args.q not in J_INVARIANTS:
        print(f"error: anchor needs class number one, q in {sorted(J_INVARIANTS)}", file=sys.stderr)
        return EXIT_USAGE
    ctx = PrecisionContext(args.precision)
    try:
        rep = anchor_report(args.q, args.bound, ctx)
    except AssertionError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return EXIT_VERIFY
    with ctx.activate():
        for sign, m in rep.matches.items():
            print(f"q={args.q} sign={sign}: eps={rep.selected[sign]} matches {m.n_primes} primes; |L(rho,1)| = {rep.abs_L[sign]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gross-sha", description="Critical L-values and analytic Sha for twisted Gross curves.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="one q")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--precision", type=_positive, default=50)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_compute)

    t = sub.add_parser("table", help="sweep a residue class")
    t.add_argument("--mod8", type=int, required=True)
    t.add_argument("--qmax", type=int, required=True)
    t.add_argument("--out", required=True)
    t.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    t.add_argument("--resume", metavar="PATH")
    t.add_argument("--precision", type=_positive, default=50)
    t.add_argument("--timings", action="store_true", help="fill runtime_ms (makes the CSV run-dependent)")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=sorted(["classgroup", "lseries", "census", "anchor"]), required=True)
    v.add_argument("--qmax", type=int)
    v.add_argument("--precision", type=_positive, default=50)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("anchor", help="point-count check for class number one")
    a.add_argument("--q", type=int, required=True)
    a.add_argument("--bound", type=int, default=500)
    a.add_argument("--precision", type=_positive, default=50)
    a.set_defaults(func=cmd_anchor)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
