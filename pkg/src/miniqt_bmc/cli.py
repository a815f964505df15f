"""Command-line interface.

    miniqt-bmc <file> --unwind 10 --no-unwinding-assertions -I models/ ...
    miniqt-bmc suite <manifest> [--jobs N] [--report out.json] ...

Exit codes: 0 verification successful, 10 violation found, 1 tool error,
2 timeout or memory limit, 3 formula emitted for an external solver.
"""

from __future__ import annotations

import argparse
import sys

from .bitblast import bitblast
from .config import VerifierConfig
from .encode import encode
from .errors import MiniQtError
from .goto_ir import format_goto_program
from .sat import ResourceLimit
from .smtlib import emit_smtlib
from .ssa import format_ssa
from .suite import format_report, run_suite, write_report
from .symex import symex
from .verify import build_goto, format_counterexample, verify_source


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--unwind", type=int, default=10, metavar="K",
                        help="loop/recursion unwinding bound (default 10)")
    parser.add_argument("--no-unwinding-assertions", action="store_true",
                        help="assume, rather than assert, that loops "
                             "terminate within the bound")
    parser.add_argument("-I", dest="include", action="append", default=[],
                        metavar="DIR", help="model include directory "
                        "(repeatable, searched in order)")
    parser.add_argument("--memlimit", type=int, default=14_000_000,
                        metavar="KB", help="memory limit in KB")
    parser.add_argument("--timeout", type=int, default=600, metavar="SEC",
                        help="per-verification timeout in seconds")
    parser.add_argument("--container-capacity", type=int, default=10,
                        metavar="N", help="bounded container capacity")
    parser.add_argument("--int-width", type=int, default=32, metavar="BITS",
                        help="width of the int type")
    parser.add_argument("--strict-positive-interval", action="store_true",
                        help="QTimer rejects a zero interval too")


def _config_from(args: argparse.Namespace) -> VerifierConfig:
    return VerifierConfig(
        unwind_bound=args.unwind,
        unwinding_assertions=not args.no_unwinding_assertions,
        include_paths=tuple(args.include),
        container_capacity=args.container_capacity,
        timeout_seconds=args.timeout,
        mem_limit_kb=args.memlimit,
        int_width=args.int_width,
        strict_positive_interval=args.strict_positive_interval,
    )


def _verify_main(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="miniqt-bmc",
        description="Bounded model checker for MiniQt programs.")
    parser.add_argument("file", help="program to verify (.cpp or .mqt)")
    _add_config_flags(parser)
    parser.add_argument("--show-goto", action="store_true",
                        help="print the lowered GOTO-program and exit")
    parser.add_argument("--show-ssa", action="store_true",
                        help="print the SSA equation system and exit")
    parser.add_argument("--smt-out", metavar="FILE",
                        help="also write the formula as SMT-LIB2")
    parser.add_argument("--solver", choices=("internal", "external-stdout"),
                        default="internal",
                        help="external-stdout prints the SMT-LIB2 script "
                             "and exits with code 3")
    args = parser.parse_args(argv)
    config = _config_from(args)

    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            source = fh.read()
    except OSError as err:
        print(f"ERROR: {err}", file=sys.stderr)
        return 1

    try:
        if args.show_goto:
            print(format_goto_program(build_goto(source, args.file, config)))
            return 0
        if args.show_ssa:
            goto = build_goto(source, args.file, config)
            print(format_ssa(symex(goto, config)))
            return 0
        if args.smt_out or args.solver == "external-stdout":
            goto = build_goto(source, args.file, config)
            script = emit_smtlib(encode(symex(goto, config)))
            if args.smt_out:
                with open(args.smt_out, "w", encoding="utf-8") as fh:
                    fh.write(script)
            if args.solver == "external-stdout":
                sys.stdout.write(script)
                return 3
    except ResourceLimit:
        print("VERIFICATION INCONCLUSIVE: timeout")
        return 2
    except MiniQtError as err:
        print(f"ERROR: {err}", file=sys.stderr)
        return 1

    result = verify_source(source, args.file, config)
    print(format_counterexample(result))
    return result.exit_code


def _suite_main(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="miniqt-bmc suite",
        description="Run a benchmark manifest and report the outcome taxonomy.")
    parser.add_argument("manifest", help="manifest file: `<path> TRUE|FALSE "
                                         "[expected-message-substring]` per line")
    _add_config_flags(parser)
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="parallel verification jobs")
    parser.add_argument("--report", metavar="FILE",
                        help="write the machine-readable JSON report here")
    args = parser.parse_args(argv)
    config = _config_from(args)
    try:
        report = run_suite(args.manifest, config, jobs=args.jobs)
    except MiniQtError as err:
        print(f"ERROR: {err}", file=sys.stderr)
        return 1
    print(format_report(report))
    if args.report:
        write_report(report, args.report)
    return 0 if report.all_as_expected else 1


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "suite":
        return _suite_main(argv[1:])
    return _verify_main(argv)


if __name__ == "__main__":
    sys.exit(main())
