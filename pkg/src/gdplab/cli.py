"""Command-line scenario runner.

    gdplab list
    gdplab builtin exp2-south --out results/ --svg
    gdplab run my_scenario.json --out results/ --policies chained,fixed:1900
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .econ import InfeasibleSubsistence
from .measurement import MissingYear, parse_policy
from .scenarios import (
    ConfigError,
    format_summary,
    list_builtins,
    load_config,
    run_builtin,
    run_scenario,
)


def _policies(text: str | None):
    if text is None:
        return None
    return [parse_policy(p) for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdplab", description="Toy-economy real GDP measurement laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", type=Path, default=Path("gdplab-out"), help="output directory (default: %(default)s)")
        p.add_argument("--svg", action="store_true", help="also write SVG charts")
        p.add_argument("--policies", help="comma-separated base policies, e.g. chained,fixed:1900,lagged:15")

    p_run = sub.add_parser("run", help="run a scenario from a JSON config file")
    p_run.add_argument("config", type=Path)
    add_common(p_run)

    p_builtin = sub.add_parser("builtin", help="run a built-in experiment")
    p_builtin.add_argument("name", choices=list_builtins(), metavar="name")
    add_common(p_builtin)

    sub.add_parser("list", help="list built-in experiments")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        print("\n".join(list_builtins()))
        return 0
    try:
        policies = _policies(args.policies)
        if args.command == "run":
            result = run_scenario(load_config(args.config), args.out, args.svg, policies)
        else:
            result = run_builtin(args.name, args.out, args.svg, policies)
    except (ConfigError, InfeasibleSubsistence, MissingYear, ValueError, OSError) as exc:
        print(f"gdplab: error: {exc}", file=sys.stderr)
        return 2
    print(format_summary(result.summary))
    return 0


if __name__ == "__main__":
    sys.exit(main())
