"""Command-line front end.

Eight subcommands map one-to-one onto the library's capabilities:

    det      determinant profile {D_n} and {D'_n} of a sequence
    poly     determinant polynomials P_n and second-kind Q_n up to --max-n
    jacobi   three-term recurrence coefficients (or moments with --invert)
    approx   the rank-r approximating sequence, --r and --len
    rank     finite-rank certificate
    profile  degree structure of the P_n family
    solve    Frobenius solvability report; --construct builds a solution
    measure  discrete-measure recovery plus verified moment residual

Inputs are JSON files ({"sequence": [...]}, {"target": [...]}, or
{"a": [...], "b": [...]} for jacobi --invert); every numeric value is a
string, exact rationals as "p/q" and reals as decimals.  Results go to
standard output only; errors are machine-readable JSON on standard error.
Exit codes: 0 success, 1 usage, 2 parse, 3 precondition violation,
4 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from mpmath import mp

from .approximants import approx_sequence, degree_profile
from .core import MomentSequence, determinant_transform
from .errors import HankelError, NotSolvable, ParseError, PrecisionExhausted
from .inverse import (
    DEFAULT_TOLERANCE,
    ZEROS,
    FreePolicy,
    TargetSequence,
    frobenius_check,
    solve_inverse,
)
from .measures import recover_measure, verify_moments
from .polynomials import JacobiCoeffs, jacobi_from_moments, moments_from_jacobi, poly_P, poly_Q
from .rank import hankel_rank
from .scalars import MIN_PRECISION_BITS

MEASURE_TOLERANCE = "1e-20"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exit code 1 with JSON."""

    def error(self, message: str):  # noqa: A003 - argparse API
        raise _UsageError(message)


def _precision(text: str) -> int:
    value = int(text)
    if value < MIN_PRECISION_BITS:
        raise argparse.ArgumentTypeError(
            f"precision must be at least {MIN_PRECISION_BITS} bits"
        )
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hankelkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("input", help="path to the input JSON file")
        return cmd

    add("det", "Hankel determinant profile of a sequence")

    poly = add("poly", "determinant polynomials P_n and Q_n")
    poly.add_argument("--max-n", type=int, default=None, help="largest n (default: all computable)")

    jacobi = add("jacobi", "three-term recurrence coefficients from moments")
    jacobi.add_argument("--max-n", type=int, default=None, help="number of coefficient pairs")
    jacobi.add_argument("--invert", action="store_true", help="input is {a,b}; output moments")

    approx = add("approx", "rank-r approximating sequence")
    approx.add_argument("--r", type=int, required=True, help="approximation rank")
    approx.add_argument("--len", type=int, default=None, dest="length",
                        help="output term count (default: input length)")

    add("rank", "finite-rank certificate")
    add("profile", "degree structure of the P_n family")

    solve = add("solve", "Frobenius solvability of prescribed determinants")
    solve.add_argument("--construct", action="store_true", help="also build a solution")
    solve.add_argument("--policy", type=str, default=None, help="free entries: zeros | seed:<u64>")
    solve.add_argument("--precision-bits", type=_precision, default=256)
    solve.add_argument("--tol", type=str, default=DEFAULT_TOLERANCE)

    measure = add("measure", "recover the representing discrete measure")
    measure.add_argument("--precision-bits", type=_precision, default=256)
    measure.add_argument("--tol", type=str, default=MEASURE_TOLERANCE)

    return parser


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read input file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _sequence(path: str) -> MomentSequence:
    return MomentSequence.from_json(_load_json(path))


def _dispatch(args) -> dict:
    if args.command == "det":
        return determinant_transform(_sequence(args.input)).to_json()

    if args.command == "poly":
        seq = _sequence(args.input)
        max_n = len(seq) // 2 if args.max_n is None else args.max_n
        if max_n < 0:
            raise _UsageError("--max-n must be >= 0")
        return {
            "P": [poly_P(seq, n).to_json() for n in range(max_n + 1)],
            "Q": [poly_Q(seq, n).to_json() for n in range(max_n + 1)],
        }

    if args.command == "jacobi":
        payload = _load_json(args.input)
        if args.invert:
            coeffs = JacobiCoeffs.from_json(payload)
            return moments_from_jacobi(coeffs).to_json()
        seq = MomentSequence.from_json(payload)
        n_terms = len(seq) // 2 if args.max_n is None else args.max_n
        if n_terms < 1:
            raise _UsageError("--max-n must be >= 1 (or provide at least 2 terms)")
        return jacobi_from_moments(seq, n_terms).to_json()

    if args.command == "approx":
        seq = _sequence(args.input)
        length = len(seq) if args.length is None else args.length
        if length < 1:
            raise _UsageError("--len must be >= 1")
        return approx_sequence(seq, args.r, length - 1).to_json()

    if args.command == "rank":
        return hankel_rank(_sequence(args.input)).to_json()

    if args.command == "profile":
        return degree_profile(_sequence(args.input)).to_json()

    if args.command == "solve":
        payload = _load_json(args.input)
        targets = TargetSequence.from_json(payload)
        report = frobenius_check(targets)
        if not args.construct:
            if not report.solvable:
                raise NotSolvable(report)
            return report.to_json()
        if args.policy is not None:
            policy = FreePolicy.parse(args.policy)
        elif isinstance(payload.get("policy"), str):
            policy = FreePolicy.parse(payload["policy"])
        else:
            policy = ZEROS
        solution = solve_inverse(
            targets,
            free_policy=policy,
            precision_bits=args.precision_bits,
            tol=args.tol,
        )
        result = solution.to_json()
        result["report"] = report.to_json()
        return result

    if args.command == "measure":
        seq = _sequence(args.input)
        measure = recover_measure(seq, precision_bits=args.precision_bits)
        residual = verify_moments(measure, seq, precision_bits=args.precision_bits)
        with mp.workprec(args.precision_bits):
            if residual.value > mp.mpf(args.tol):
                raise PrecisionExhausted(
                    args.precision_bits, mp.nstr(residual.value, 10), args.tol
                )
        result = measure.to_json()
        result["residual"] = residual.to_str()
        result["precision_bits"] = args.precision_bits
        return result

    raise _UsageError(f"unknown command {args.command!r}")


def _emit_error(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload, indent=2) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        _emit_error({"error": str(exc), "kind": "UsageError"})
        return 1
    try:
        payload = _dispatch(args)
    except _UsageError as exc:
        _emit_error({"error": str(exc), "kind": "UsageError"})
        return 1
    except HankelError as exc:
        _emit_error(exc.to_json())
        return exc.exit_code
    except ValueError as exc:
        _emit_error({"error": str(exc), "kind": "Precondition"})
        return 3
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
