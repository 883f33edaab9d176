"""
Operad Workbench - Main Application
Command line front end for exact computations with binary operads.

Features:
- Quotient and associated graded dimensions
- Ideal membership with coordinates
- Generator maps and low-arity isomorphism checks
- Named verifications with pass/fail reports

Exit codes: 0 on success or pass, 1 on a failed verification,
2 on a usage or parse error.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

# Add this directory to the path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import config
from controller import Controller, RunConfig, parse_assignment
from operads.errors import OperadError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opb", description="Exact workbench for binary operads.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, source: bool = True):
        if source:
            group = sub.add_mutually_exclusive_group()
            group.add_argument("--preset", help="built-in presentation name")
            group.add_argument("--file", help="presentation file in the operad DSL")
            sub.add_argument("--set", dest="assignments", action="append", default=[], metavar="NAME=RATIONAL",
                             help="specialize a parameter (repeatable)")
        sub.add_argument("--arity", type=int, default=config.DEFAULT_ARITY)
        sub.add_argument("--allow-big", action="store_true", help=f"permit arity {config.BIG_ARITY}")
        sub.add_argument("--format", dest="output", choices=config.OUTPUT_FORMATS, default="text")

    for name in ("dim", "grdim", "ideal-rank", "classify"):
        common(commands.add_parser(name))

    sub = commands.add_parser("member")
    common(sub)
    sub.add_argument("--element", required=True, help="element text, e.g. 'b(m(1,2),3) - m(b(1,3),2)'")

    sub = commands.add_parser("map-check")
    sub.add_argument("--file", help="document with map blocks")
    sub.add_argument("--map", dest="map_name", required=True)
    sub.add_argument("--inverse", help="inverse map name (default: the registered inverse)")
    common(sub, source=False)

    sub = commands.add_parser("verify")
    sub.add_argument("target", nargs="?", default="all", help="verification name or 'all'")
    sub.add_argument("--optional", action="store_true", help="include optional-tier verifications")
    sub.add_argument("--jobs", type=int, default=1)
    common(sub, source=False)

    sub = commands.add_parser("parse")
    sub.add_argument("file")
    sub.add_argument("--format", dest="output", choices=config.OUTPUT_FORMATS, default="text")
    return parser


def parse_args(argv: Optional[List[str]] = None) -> RunConfig:
    """
    Turn argv into a RunConfig.

    Raises:
        SystemExit: argparse usage errors (exit code 2)
        OperadError: bad --set values or arity limits
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    assignments = dict(parse_assignment(text) for text in getattr(args, "assignments", []))
    return RunConfig(
        command=args.command,
        preset=getattr(args, "preset", None),
        file=getattr(args, "file", None),
        arity=getattr(args, "arity", config.DEFAULT_ARITY),
        assignments=assignments,
        output=args.output,
        optional=getattr(args, "optional", False),
        allow_big=getattr(args, "allow_big", False),
        target=getattr(args, "target", None),
        element=getattr(args, "element", None),
        map_name=getattr(args, "map_name", None),
        inverse=getattr(args, "inverse", None),
        jobs=getattr(args, "jobs", 1),
    )


def display(response: dict, output: str):
    """Print a result on stdout in the requested format."""
    if output == "records":
        for record in response['records']:
            print(json.dumps(record, sort_keys=True))
    elif response['formatted']:
        print(response['formatted'])


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT, stream=sys.stderr)

    try:
        run = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    except OperadError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    response = Controller(run).process()
    if response['error']:
        print(f"error: {response['error']}", file=sys.stderr)
        return EXIT_USAGE

    display(response, run.output)
    return EXIT_OK if response['passed'] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
