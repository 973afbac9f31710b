from __future__ import annotations

"""
CLI ENTRYPOINT

Subcommands: doctor, coeffs, bounds, run, compare, verify.
Domain errors map to their exit codes (see core.exceptions).
"""

import argparse
import sys

from core.exceptions import CauchyLagrangianError
from interfaces.cli.bounds_commands import register_bounds_commands
from interfaces.cli.coeffs_commands import register_coeffs_commands
from interfaces.cli.commands import register_base_commands
from interfaces.cli.compare_commands import register_compare_commands
from interfaces.cli.run_commands import register_run_commands
from interfaces.cli.verify_commands import register_verify_commands


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchy-lagrangian",
        description="Cauchy-Lagrangian Taylor series for 3D Euler flow",
    )

    sub = parser.add_subparsers(dest="command")

    register_base_commands(sub)
    register_coeffs_commands(sub)
    register_bounds_commands(sub)
    register_run_commands(sub)
    register_compare_commands(sub)
    register_verify_commands(sub)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help()
        return 0

    try:
        result = args.func(args)
    except CauchyLagrangianError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    print(result.output)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
