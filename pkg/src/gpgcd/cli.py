"""Command-line interface: ``gpgcd solve | bench | estimate-degree | generate``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .bench import BenchConfig, format_report, generate_test_case, report_to_dict, run_benchmark
from .errors import DegenerateCofactorError, InvalidProblemError, SingularSystemError
from .extract import select_and_correct
from .io import (
    failure_to_dict,
    parse_input,
    problem_to_dict,
    read_polynomials,
    result_to_dict,
)
from .solver import SolverOptions, solve
from .sylvester import DEFAULT_RANK_TOL, gcd_degree_estimate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3
EXIT_SINGULAR = 4
EXIT_DEGENERATE = 5

log = logging.getLogger("gpgcd")


def _class_spec(text: str) -> tuple[int, int, int]:
    try:
        m, d, n = (int(t) for t in text.strip("()").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected m,d,n (e.g. 10,5,3), got {text!r}")
    return m, d, n


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _options(base: SolverOptions, args) -> SolverOptions:
    kw = {}
    if args.epsilon is not None:
        kw["epsilon"] = args.epsilon
    if args.max_iter is not None:
        kw["max_iterations"] = args.max_iter
    return replace(base, **kw) if kw else base


def cmd_solve(args) -> int:
    try:
        problem, file_options = parse_input(args.input)
        options = _options(file_options, args)
    except (InvalidProblemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    try:
        outcome = solve(problem, options)
    except SingularSystemError as exc:
        print(f"error: singular Newton system: {exc}", file=sys.stderr)
        _emit(failure_to_dict(problem, "singular", str(exc)), args.output)
        return EXIT_SINGULAR
    try:
        result = select_and_correct(problem, outcome.final_x, outcome)
    except DegenerateCofactorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(failure_to_dict(problem, "degenerate", str(exc)), args.output)
        return EXIT_DEGENERATE
    if args.monic_gcd:
        result = result.monic()

    _emit(result_to_dict(result), args.output)
    status = "converged" if outcome.converged else "NOT converged"
    print(f"{status} after {outcome.iterations} iterations; "
          f"perturbation {result.perturbation:.6e}", file=sys.stderr)
    return EXIT_OK if outcome.converged else EXIT_NOT_CONVERGED


def cmd_estimate_degree(args) -> int:
    try:
        polys = read_polynomials(args.input)
    except InvalidProblemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(gcd_degree_estimate(polys, args.tol))
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        config = BenchConfig(args.m, args.d, args.n, cases=args.cases,
                             noise=args.noise, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    docs = [problem_to_dict(generate_test_case(config, i)) for i in range(config.cases)]
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, doc in enumerate(docs):
            (out / f"case_{i:03d}.json").write_text(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(json.dumps(docs, indent=2) + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    classes = args.classes or [(10, 5, 3)]
    try:
        configs = [
            BenchConfig(m, d, n, cases=args.cases, noise=args.noise, seed=args.seed,
                        epsilon=args.epsilon if args.epsilon is not None else 1e-8,
                        max_iterations=args.max_iter if args.max_iter is not None else 100)
            for m, d, n in classes
        ]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reports = []
    for cfg in configs:
        log.info("running %s, %d cases", cfg.label, cfg.cases)
        reports.append(run_benchmark(cfg))
    table = format_report(reports, include_timing=args.timing)
    if args.output:
        Path(args.output).write_text(table)
    else:
        sys.stdout.write(table)
    if args.json:
        doc = [report_to_dict(r, include_timing=args.timing) for r in reports]
        Path(args.json).write_text(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpgcd",
        description="Approximate GCD of several real polynomials by modified Newton iteration.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--epsilon", type=float, help="stop when ||dx||_2 <= EPSILON (default 1e-8)")
        p.add_argument("--max-iter", type=int, help="iteration limit (default 100)")

    p = sub.add_parser("solve", help="compute an approximate GCD for one problem file")
    p.add_argument("input", help="problem file (JSON)")
    solver_flags(p)
    p.add_argument("--monic-gcd", action="store_true", help="rescale the GCD to be monic")
    p.add_argument("-o", "--output", help="write the result here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("estimate-degree", help="GCD degree of exact inputs from subresultant ranks")
    p.add_argument("input", help="problem file (gcd_degree may be omitted)")
    p.add_argument("--tol", type=float, default=DEFAULT_RANK_TOL,
                   help="relative singular value cutoff (default %(default)g)")
    p.set_defaults(func=cmd_estimate_degree)

    def gen_flags(p):
        p.add_argument("--cases", type=int, default=10)
        p.add_argument("--noise", type=float, default=0.1, help="2-norm of the added noise")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("generate", help="emit random instances with a planted GCD")
    p.add_argument("--m", type=int, required=True, help="degree of each polynomial")
    p.add_argument("--d", type=int, required=True, help="degree of the planted GCD")
    p.add_argument("--n", type=int, required=True, help="number of polynomials")
    gen_flags(p)
    p.add_argument("-o", "--output", help="directory for case_NNN.json files (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run the random-instance benchmark")
    p.add_argument("--class", dest="classes", action="append", type=_class_spec,
                   metavar="M,D,N", help="instance class; repeatable (default 10,5,3)")
    gen_flags(p)
    solver_flags(p)
    p.add_argument("--no-timing", dest="timing", action="store_false",
                   help="omit wall-clock columns so output is reproducible byte for byte")
    p.add_argument("-o", "--output", help="write the table here instead of stdout")
    p.add_argument("--json", help="also write per-case results as JSON")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
