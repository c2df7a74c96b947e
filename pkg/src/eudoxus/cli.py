"""Command line front end.

Exit codes: 0 success, 1 parse error / malformed input / unknown suite,
2 evaluation error, 3 budget exceeded, 4 certificate violated or a matrix
entry not contained.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import core, lemmas, multidim
from .core import Budget, BudgetExceeded, EudoxusError
from .expr import EvaluationError, ParseError, evaluate, parse
from .numeric import format_rat, parse_rat

EXIT_OK, EXIT_PARSE, EXIT_EVAL, EXIT_BUDGET, EXIT_VIOLATED = 0, 1, 2, 3, 4

ENV_BUDGET = "EUDOXUS_BUDGET"


@dataclass(frozen=True)
class CliConfig:
    budget_exponent: int = core.DEFAULT_BUDGET_EXPONENT
    seed: int = 0
    output: str = "plain"

    def __post_init__(self):
        if self.budget_exponent < 1:
            raise ValueError("budget exponent must be >= 1")
        if self.output not in ("plain", "json-lines"):
            raise ValueError(f"unknown output mode {self.output!r}")

    @property
    def budget(self) -> Budget:
        return Budget(self.budget_exponent)


class _Out:
    def __init__(self, cfg: CliConfig, stdout, stderr):
        self.cfg, self.stdout, self.stderr = cfg, stdout, stderr

    def emit(self, plain: str, record: dict):
        if self.cfg.output == "json-lines":
            print(json.dumps(record), file=self.stdout)
        else:
            print(plain, file=self.stdout)

    def error(self, message: str):
        print(f"error: {message}", file=self.stderr)


def _default_budget() -> int:
    raw = os.environ.get(ENV_BUDGET)
    if raw is None:
        return core.DEFAULT_BUDGET_EXPONENT
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {ENV_BUDGET} must be an integer, got {raw!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _rational(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=None,
                        help=f"evaluation arguments are capped at 2^BUDGET "
                             f"(default {core.DEFAULT_BUDGET_EXPONENT}, or ${ENV_BUDGET})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=("plain", "json-lines"), default="plain")

    parser = argparse.ArgumentParser(
        prog="eudoxus",
        description="Exact real arithmetic on almost homomorphisms Z -> Z.",
        epilog="In expressions, INT/INT with two adjacent integer literals is an "
               "exact rational; any other '/' is division.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="print decimal digits of an expression")
    p.add_argument("expr")
    p.add_argument("--digits", type=_positive, default=10)

    p = sub.add_parser("colonnade", parents=[common],
                       help="print floor(p*x) (or a normal form) for p = 1..COUNT")
    p.add_argument("expr")
    p.add_argument("--count", type=_positive, default=10)

    p = sub.add_parser("certify", parents=[common], help="audit the defect certificate")
    p.add_argument("expr")
    p.add_argument("--range", type=_positive, default=1000, dest="range_")
    p.add_argument("--samples", type=_positive, default=10_000)

    p = sub.add_parser("matrix-recover", parents=[common],
                       help="lift a matrix with noise and recover it")
    p.add_argument("--file", required=True)
    p.add_argument("--noise", type=int, default=0)
    p.add_argument("--eps", type=_rational, default=Fraction(1, 100))

    p = sub.add_parser("bench", parents=[common], help="time a fixed workload")
    p.add_argument("--suite", required=True)
    return parser


def _evaluate(text: str, cfg: CliConfig):
    return evaluate(parse(text), cfg.budget)


def cmd_eval(args, cfg: CliConfig, out: _Out) -> int:
    x = _evaluate(args.expr, cfg)
    text = core.digits(x, args.digits, cfg.budget)
    out.emit(text, {"command": "eval", "expr": args.expr, "digits": args.digits, "value": text})
    return EXIT_OK


def cmd_colonnade(args, cfg: CliConfig, out: _Out) -> int:
    x = _evaluate(args.expr, cfg)
    if x.floor_exact:
        values, exact = core.nu(x, args.count), True
    else:
        canon = core.canonicalize(x, cfg.budget)
        values, exact = [canon.eval(p) for p in range(1, args.count + 1)], False
    if cfg.output == "json-lines":
        out.emit("", {"command": "colonnade", "expr": args.expr, "exact": exact, "values": values})
    else:
        for v in values:
            print(v, file=out.stdout)
    return EXIT_OK


def cmd_certify(args, cfg: CliConfig, out: _Out) -> int:
    x = _evaluate(args.expr, cfg)
    report = lemmas.certificate_audit(x, args.range_, args.samples, cfg.seed)
    out.emit(report.to_line(), {
        "command": "certify", "label": report.label, "cert": report.cert_claimed,
        "max_observed": report.max_defect_observed, "samples": report.samples,
        "violated": report.violated})
    return EXIT_VIOLATED if report.violated else EXIT_OK


def cmd_matrix_recover(args, cfg: CliConfig, out: _Out) -> int:
    try:
        with open(args.file) as fh:
            matrix = multidim.parse_matrix(fh.read())
    except (OSError, ValueError, ZeroDivisionError) as exc:
        out.error(f"cannot read matrix: {exc}")
        return EXIT_PARSE
    if args.noise < 0:
        out.error("--noise must be >= 0")
        return EXIT_PARSE
    if args.noise == 0 and all(e.denominator == 1 for r in matrix for e in r):
        # Same values as the noisy lift, but with the exact certificate 0.
        f = multidim.from_int_matrix([[int(e) for e in r] for r in matrix])
    else:
        f = multidim.from_matrix_noisy(matrix, args.noise, cfg.seed)
    im = multidim.recover_matrix(f, args.eps, cfg.budget)
    contained = im.contains(matrix)
    ok = all(all(r) for r in contained)
    if cfg.output == "json-lines":
        for i, row in enumerate(im.rows):
            for j, e in enumerate(row):
                out.emit("", {"command": "matrix-recover", "i": i, "j": j,
                              "lo": format_rat(e.lo), "hi": format_rat(e.hi),
                              "true": format_rat(matrix[i][j]),
                              "contained": contained[i][j]})
    else:
        print(multidim.format_interval_matrix(im), end="", file=out.stdout)
        for i, row in enumerate(contained):
            for j, c in enumerate(row):
                print(f"entry {i} {j} {'contained' if c else 'NOT-contained'}", file=out.stdout)
    return EXIT_OK if ok else EXIT_VIOLATED


def _bench_digits(budget: Budget):
    # 50 digits of sqrt(2) need q ~ 4e50, beyond the default 2^64 cap.
    core.digits(core.sqrt_int(2), 50, Budget(max(budget.max_arg_exponent, 200)))


def _bench_mul(budget: Budget):
    x = core.sqrt_int(2)
    for a in range(1, 1001):
        core.mul(x, core.from_rational(Fraction(a, 7))).eval(10 ** 12)


def _bench_recip(budget: Budget):
    for a in range(1, 101):
        core.recip(core.add(core.sqrt_int(a), core.from_rational(Fraction(1, 3))), budget).eval(10 ** 12)


BENCH_SUITES = {
    "digits": ("50 digits of sqrt(2)", _bench_digits),
    "mul": ("1000 multiplications", _bench_mul),
    "recip": ("100 reciprocals", _bench_recip),
}


def cmd_bench(args, cfg: CliConfig, out: _Out) -> int:
    if args.suite not in BENCH_SUITES:
        out.error(f"unknown suite {args.suite!r}; choose from {', '.join(BENCH_SUITES)}")
        return EXIT_PARSE
    workload, fn = BENCH_SUITES[args.suite]
    start = time.perf_counter()
    fn(cfg.budget)
    elapsed = time.perf_counter() - start
    # Bench records are always json-lines.
    print(json.dumps({"suite": args.suite, "workload": workload, "seconds": elapsed}),
          file=out.stdout)
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "colonnade": cmd_colonnade,
    "certify": cmd_certify,
    "matrix-recover": cmd_matrix_recover,
    "bench": cmd_bench,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    budget = args.budget if args.budget is not None else _default_budget()
    cfg = CliConfig(budget, args.seed, args.output)
    out = _Out(cfg, stdout, stderr)
    try:
        return COMMANDS[args.command](args, cfg, out)
    except ParseError as exc:
        out.error(str(exc))
        return EXIT_PARSE
    except BudgetExceeded as exc:
        out.error(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except (EvaluationError, EudoxusError) as exc:
        out.error(str(exc))
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
