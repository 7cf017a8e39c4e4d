"""Command-line entry point: ``sqtrace verify | reproduce | falsify | matrix``.

Exit codes: 0 all pass, 1 an inequality was violated, 2 usage or
configuration error.  Conjecture margins never change the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ..errors import ConfigError, SqTraceError
from ..functions import SUPERQUADRATIC_SET, parse_function
from ..hermitian import check_hermitian, eig, load_matrix
from ..report import DEFAULT_TOL
from .conjecture import LABEL, falsify_conjecture
from .examples import reproduce_examples
from .suite import PROPERTY_INEQUALITIES, REGISTRY, SuiteConfig, functions_for, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sqtrace", description="Verify superquadratic trace inequalities on random instances.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--ineq", default="all", help="inequality name or 'all'")
    v.add_argument("--n", type=int, action="append", help="dimension (repeatable); default 2 3 4 6")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--f", action="append", help="function such as pow:3, negpow:1.5, tlogt (repeatable)")
    v.add_argument("--seed", type=_seed, default=0)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--json", help="write the suite result to this path")
    v.add_argument("--witness-dir", help="directory for failing-instance ndjson files")

    sub.add_parser("reproduce", help="recompute the worked 2x2 examples")

    fz = sub.add_parser("falsify", help="random search on the conjectured refinement")
    fz.add_argument("--trials", type=int, default=10000)
    fz.add_argument("--n", type=int, action="append")
    fz.add_argument("--f", action="append")
    fz.add_argument("--seed", type=_seed, default=0)
    fz.add_argument("--json")

    m = sub.add_parser("matrix", help="inspect a matrix file")
    m.add_argument("--file", required=True)
    return p


def _write_json(path, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text + "\n")


def cmd_verify(args) -> int:
    if args.ineq == "all":
        names = PROPERTY_INEQUALITIES
    elif args.ineq in REGISTRY:
        names = (args.ineq,)
    else:
        raise ConfigError(f"unknown inequality {args.ineq!r}; known: all, {', '.join(sorted(REGISTRY))}")
    functions = tuple(args.f) if args.f else None
    if functions:
        for lab in functions:
            parse_function(lab)
        names = tuple(k for k in names if functions_for(k, functions))
        if not names:
            raise ConfigError(f"no selected inequality applies to {list(functions)}")
    config = SuiteConfig(
        inequalities=names,
        dims=tuple(args.n) if args.n else (2, 3, 4, 6),
        trials=args.trials,
        functions=functions,
        tol=args.tol,
        seed=args.seed,
        witness_dir=args.witness_dir,
    )
    result = run_suite(config)
    print("\n".join(result.csv_lines()))
    if args.json:
        _write_json(args.json, result.to_json())
    if result.witness_file:
        print(f"# failing instances written to {result.witness_file}", file=sys.stderr)
    return EXIT_OK if result.all_passed else EXIT_VIOLATION


def cmd_reproduce(_args) -> int:
    table = reproduce_examples()
    print("\n".join(table.lines()))
    return EXIT_OK if table.passed else EXIT_VIOLATION


def cmd_falsify(args) -> int:
    if args.trials < 1:
        raise ConfigError("falsify needs at least one trial")
    functions = tuple(args.f) if args.f else SUPERQUADRATIC_SET
    for lab in functions:
        if not parse_function(lab).superquadratic:
            raise ConfigError(f"{lab} is not superquadratic")
    result = falsify_conjecture(args.trials, tuple(args.n) if args.n else (3,), functions, args.seed)
    print(f"# conjecture search: {LABEL}")
    print("reading,trials,negative_margins,min_margin,witness_seed,witness_trial,witness_function,witness_n")
    for name, s in result.stats.items():
        w = s.worst
        print(f"{name},{s.trials},{s.failed},{s.min_margin:.6e},{w.seed},{w.trial},{w.function},{w.n}")
    if args.json:
        _write_json(args.json, result.to_json())
    return EXIT_OK


def cmd_matrix(args) -> int:
    try:
        A = load_matrix(args.file)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read {args.file}: {exc}") from exc
    H = check_hermitian(A)
    spec = eig(H)
    print(json.dumps({
        "n": spec.n,
        "eigenvalues": spec.values.tolist(),
        "trace": float(np.trace(H).real),
        "psd": bool(spec.values[-1] >= -1e-10),
        "sweeps": spec.sweeps,
    }, indent=2))
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "reproduce": cmd_reproduce, "falsify": cmd_falsify, "matrix": cmd_matrix}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SqTraceError as exc:
        print(f"sqtrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
