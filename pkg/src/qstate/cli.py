"""Command-line interface.

Exit status: 0 on success, 1 when the input has diagnostics (parse errors,
failed checks, a matrix that is not unit), 2 on usage errors including
unreadable input files.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time
from typing import Optional, Sequence

from .deutsch import BASIS_NAMES, OracleSpec, run_deutsch
from .errors import MatrixFormatError, QuantumError
from .numerics import DEFAULT_TOL, load_matrix, unit_deviation
from .postulates import make_rng, probabilities
from .qcl import ProgramError, check, execute, parse_file

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text!r}")
    return value


def _oracle(text: str) -> OracleSpec:
    try:
        return OracleSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="unit-check tolerance")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=None, help="RNG seed (random if omitted)")
    seeded.add_argument("--trace", action="store_true", help="include every intermediate state")
    seeded.add_argument(
        "--no-timing", action="store_true", help="omit wall-clock duration (byte-stable output)"
    )

    parser = argparse.ArgumentParser(prog="qstate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common, seeded], help="parse, check and execute a circuit file")
    run.add_argument("file")
    run.add_argument("--shots", type=_positive_int, default=None, help="override measure shots")

    dj = sub.add_parser("deutsch", parents=[common, seeded], help="run the one-query Xor algorithm")
    dj.add_argument("--oracle", type=_oracle, required=True, metavar="FF,FT")

    verify = sub.add_parser("verify", parents=[common], help="check that a matrix file is unit")
    verify.add_argument("matrix_file")
    return parser


def _seed(value: Optional[int]) -> int:
    return value if value is not None else secrets.randbits(32)


def _cmd_run(args) -> int:
    try:
        program = parse_file(args.file)
    except OSError as exc:
        print(f"qstate: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except ProgramError as exc:
        _emit_diagnostics(args, args.file, exc.diagnostics)
        return EXIT_DIAGNOSTICS
    diags = check(program, args.tol)
    if diags:
        _emit_diagnostics(args, args.file, diags)
        return EXIT_DIAGNOSTICS
    report = execute(program, _seed(args.seed), shots=args.shots, trace=args.trace, tol=args.tol)
    timing = not args.no_timing
    if args.format == "json":
        sys.stdout.write(report.to_json(timing))
    else:
        sys.stdout.write(report.to_text(timing))
    return EXIT_OK


def _emit_diagnostics(args, source, diags) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps({"diagnostics": [d.to_json() for d in diags]}, indent=2) + "\n")
    for d in diags:
        print(d.render(source), file=sys.stderr)


def _num(x: float) -> float:
    return float(f"{x:.12g}")


def _cmd_deutsch(args) -> int:
    seed = _seed(args.seed)
    t0 = time.perf_counter()
    report = run_deutsch(args.oracle, make_rng(seed), args.tol)
    elapsed = (time.perf_counter() - t0) * 1000.0
    probs = probabilities(report.state("HUHV")).probs
    if args.format == "json":
        obj = {
            "oracle": {"f_false": report.oracle.f_false, "f_true": report.oracle.f_true},
            "seed": seed,
            "outcome": report.outcome,
            "outcome_name": report.outcome_name,
            "xor": report.xor_value,
            "outcome_probability": _num(report.outcome_probability),
            "probabilities": [_num(p) for p in probs],
        }
        if args.trace:
            obj["trace"] = {
                name: [[_num(a), _num(b)] for a, b in s.amplitudes()]
                for name, s in report.intermediate_states
            }
        obj["duration_ms"] = None if args.no_timing else round(elapsed, 3)
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
        return EXIT_OK
    out = [
        f"oracle: F_False={report.oracle.f_false} F_True={report.oracle.f_true}",
        f"seed: {seed}",
    ]
    if args.trace:
        out.append("trace:")
        for name, s in report.intermediate_states:
            amps = " ".join(f"({a:.6g},{b:.6g})" for a, b in s.amplitudes())
            out.append(f"  {name:<5} [ {amps} ]")
    out.append("probabilities:")
    for i, p in enumerate(probs, start=1):
        out.append(f"  {i} ({BASIS_NAMES[i - 1]}): {p:.6g}")
    out.append(f"outcome: {report.outcome} ({report.outcome_name})")
    out.append(f"xor={'true' if report.xor_value else 'false'}")
    out.append(f"outcome probability: {report.outcome_probability:.6g}")
    if not args.no_timing:
        out.append(f"duration: {elapsed:.3f} ms")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        matrix = load_matrix(args.matrix_file)
    except OSError as exc:
        print(f"qstate: cannot read {args.matrix_file}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixFormatError as exc:
        print(f"{args.matrix_file}:{exc.line}:{exc.column}: ParseError: {exc.reason}", file=sys.stderr)
        return EXIT_DIAGNOSTICS
    except QuantumError as exc:
        print(f"{args.matrix_file}: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTICS
    dev = unit_deviation(matrix)
    unit = dev < args.tol
    if args.format == "json":
        obj = {
            "path": args.matrix_file,
            "rows": matrix.rows,
            "cols": matrix.cols,
            "unit": unit,
            "max_deviation": _num(dev),
            "tol": args.tol,
        }
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        verdict = "unit" if unit else "not unit"
        rel = "<" if unit else ">="
        print(f"{verdict}, max deviation {dev:.3e} {rel} {args.tol:g} ({matrix.rows}x{matrix.cols})")
    return EXIT_OK if unit else EXIT_DIAGNOSTICS


_COMMANDS = {"run": _cmd_run, "deutsch": _cmd_deutsch, "verify": _cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
