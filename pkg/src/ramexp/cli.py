"""Command-line front end: ``ramexp sum|eval|classify|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or schema error,
3 capacity or precision error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .arith import CapacityError
from .classifier import classify
from .coefficients import SpecError, spec_from_json
from .expansions import (
    EXACT_THRESHOLD,
    coprime_split_eval,
    decade_checkpoints,
    direct_partial_sum,
    factored_eval,
    infinite_euler_product_eval,
    local_factored_eval,
)
from .ramanujan import OraclePrecisionError, c_definition_oracle, c_holder
from .reports import big_int_strings, dumps, record, to_csv
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
METHODS = ("direct", "factored", "local", "euler", "coprime-split")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list:
    try:
        return sorted({int(x) for x in text.replace(" ", "").split(",") if x})
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _load_spec(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return spec_from_json(text)


def _emit(records: list, reports: list, output: str, out: Optional[str]) -> None:
    if output == "json":
        text = dumps(records[0] if len(records) == 1 else records) + "\n"
    else:
        parts = []
        for rec, rep in zip(records, reports):
            table = to_csv(rep)
            if len(records) > 1:
                header, *rows = table.splitlines()
                a = rec.get("a", "")
                table = "\n".join([f"a,{header}"] + [f"{a},{r}" for r in rows]) + "\n"
                if parts:
                    table = table.split("\n", 1)[1]
            parts.append(table)
        text = "".join(parts)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_sum(args) -> int:
    value = c_holder(args.q, args.a)
    print(value)
    if args.oracle:
        oracle = c_definition_oracle(args.q, args.a)
        print(f"oracle {oracle}")
        if oracle != value:
            print("MISMATCH")
            return EXIT_FAIL
        print("MATCH")
    return EXIT_OK


def _eval_one(spec, args, a):
    m = args.method
    if m == "direct":
        cps = decade_checkpoints(args.Q) if args.checkpoints else None
        return direct_partial_sum(spec, a, args.Q, cps, args.mode, exact_threshold=args.exact_threshold)
    if m == "factored":
        if not args.primes:
            raise UsageError("--method factored needs a non-empty --primes list")
        return factored_eval(spec, args.primes, a, args.Q, args.mode, exact_threshold=args.exact_threshold)
    if m == "local":
        return local_factored_eval(spec, a, args.Q, args.mode, exact_threshold=args.exact_threshold)
    if m == "euler":
        return infinite_euler_product_eval(spec, a, args.p_max, args.mode)
    if not args.primes:
        raise UsageError("--method coprime-split needs --primes (the set S)")
    return coprime_split_eval(
        spec, args.primes, a, args.Q, args.p_max, args.mode, exact_threshold=args.exact_threshold
    )


def cmd_eval(args) -> int:
    spec = _load_spec(args.spec)
    a_values = args.a_list or [args.a]
    records, reports = [], []
    for a in a_values:
        rep = _eval_one(spec, args, a)
        reports.append(rep)
        records.append(record(rep, spec, method=args.method, a=a))
    _emit(records, reports, args.output, args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    spec = _load_spec(args.spec)
    rep = classify(spec, p_max=args.p_max, k_max=args.k_max, Q=args.Q)
    _emit([record(rep, spec)], [rep], args.output, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run(
        args.suite,
        max_n=args.max,
        p_max=args.pmax,
        a_max=args.amax,
        smooth=args.smooth,
        n_specs=args.n_specs,
        n_random=args.n_random,
        seed=args.seed,
        Q=args.Q,
    )
    with big_int_strings():
        for r in results:
            print(r.summary())
            for ex in r.examples:
                print(f"  failed: {ex}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramexp", description="Exact Ramanujan expansions with multiplicative coefficients."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="print the Ramanujan sum c_q(a)")
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--oracle", action="store_true", help="also evaluate the roots-of-unity definition")
    p.set_defaults(func=cmd_sum)

    def output_flags(p):
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("eval", help="evaluate an expansion for one spec")
    p.add_argument("--spec", required=True, help="spec JSON file, or - for stdin")
    p.add_argument("--method", choices=METHODS, default="direct")
    p.add_argument("--a", type=_positive, default=1)
    p.add_argument("--a-list", type=_int_list, help="comma-separated a values; overrides --a")
    p.add_argument("--Q", type=_positive, default=10_000)
    p.add_argument("--p-max", type=_positive, default=100_000)
    p.add_argument("--primes", type=_int_list, default=[], help="prime set F (factored) or S (coprime-split)")
    p.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    p.add_argument("--exact-threshold", type=_positive, default=EXACT_THRESHOLD)
    p.add_argument("--checkpoints", action="store_true", help="record decade checkpoints (direct)")
    output_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="place a spec in the C1/C2/C3 trichotomy")
    p.add_argument("--spec", required=True)
    p.add_argument("--p-max", type=_positive, default=1000)
    p.add_argument("--k-max", type=_positive, default=16)
    p.add_argument("--Q", type=_positive, default=100_000)
    output_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run an identity battery")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--max", type=_positive, help="holder: largest q and a")
    p.add_argument("--pmax", type=_positive, help="main-lemma: largest prime; euler-product: p_max")
    p.add_argument("--amax", type=_positive, help="largest a")
    p.add_argument("--smooth", action="store_true", help="main-theorem: exact smooth battery")
    p.add_argument("--n-specs", type=_positive)
    p.add_argument("--n-random", type=_positive)
    p.add_argument("--seed", type=int)
    p.add_argument("--Q", type=_positive)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, OraclePrecisionError) as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
