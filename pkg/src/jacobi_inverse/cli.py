"""Command-line interface.

Exit status is 0 on success, 1 for usage or validation errors and 2 when
an engine breaks down numerically.
"""

from __future__ import annotations

import argparse
import sys

from .coords import initial_permutation, w_to_beta
from .core import validate_spectral
from .errors import InverseDataError, NumericalError
from .experiments import EXPERIMENTS, BenchConfig, benchmark
from .reconstruct import ALGOS, reconstruct_from_w
from .spectral import norming_constants
from .textio import format_matrix, format_spectral, parse_matrix, parse_spectral
from .tighten import tighten


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _cmd_forward(args) -> str:
    return format_spectral(norming_constants(parse_matrix(_read(args.file))))


def _cmd_reconstruct(args) -> str:
    d = parse_spectral(_read(args.file))
    return format_matrix(reconstruct_from_w(d, args.algo, args.digits))


def _cmd_tighten(args) -> str:
    d = validate_spectral(parse_spectral(_read(args.file)))
    rep = tighten(w_to_beta(d, initial_permutation(d)))
    beta = " ".join(format(float(x), ".17g") for x in rep.result.beta)
    return (
        f"permutation {rep.result.pi}\n"
        f"beta {beta}\n"
        f"sweeps {rep.sweeps}\n"
        f"transpositions {rep.transpositions}\n"
    )


def _cmd_bench(args) -> str:
    cfg = BenchConfig(args.experiment, args.n, args.trials, args.digits, args.sigma, args.seed)
    report = benchmark(cfg)
    return report.to_csv() if args.format == "csv" else report.to_table()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jacobi-inverse", description="Jacobi matrices from spectral data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("forward", help="eigenvalues and norming constants of a matrix file")
    p.add_argument("file", help="matrix file, or - for stdin")
    p.set_defaults(func=_cmd_forward)

    p = sub.add_parser("reconstruct", help="matrix from a spectral file")
    p.add_argument("--algo", choices=ALGOS, default="bi2")
    p.add_argument("--digits", type=int, default=0, help="significant digits to emulate (0 = native)")
    p.add_argument("file", help="spectral file, or - for stdin")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("tighten", help="tight permutation and its bidiagonal coordinates")
    p.add_argument("file", help="spectral file, or - for stdin")
    p.set_defaults(func=_cmd_tighten)

    p = sub.add_parser("bench", help="run a seeded benchmark")
    p.add_argument("--experiment", choices=EXPERIMENTS, default="random")
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--trials", type=int, default=40)
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--sigma", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except NumericalError as exc:
        print(f"numerical breakdown: {exc}", file=sys.stderr)
        return 2
    except (InverseDataError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
