#!/usr/bin/env python3
"""
StrataSpin - Strata of Abelian and Quadratic Differentials
Command-line access to stratum facts, the orientation double cover, the spin
parity by three cross-checked routes, Z2 quadratic forms, and rational billiards.
"""

import argparse
import sys
from typing import List, Optional

from modules.billiard import classify, parse_angles
from modules.config import EXIT_DISAGREEMENT, EXIT_INTERRUPTED, EXIT_OK, EXIT_VALIDATION, ZERO_MASS_SLACK
from modules.json_io import (
    arf_chain_report,
    arf_count_report,
    billiard_report,
    cover_report,
    enumerate_report,
    export_report,
    render,
    spin_report,
    stratum_report,
)
from modules.selftest import SelfTestRunner
from modules.stratum import Flavor, enumerate_patterns, parse_pattern
from modules.utils import ConsistencyError, PatternSyntaxError, StrataError, configure_logging, get_logger

logger = get_logger("strataspin")


class StrataArgumentParser(argparse.ArgumentParser):
    """Usage errors carry the same error[category] prefix as every other failure."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"error[usage]: {message}\n")


def parse_orders(text: str) -> List[int]:
    """Parse ``-1,1,3,5`` or ``(-1,1,3,5)`` into a list of integers."""
    body = text.strip()
    offset = len(text) - len(text.lstrip())
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
        offset += 1
    orders = []
    for item in body.split(","):
        try:
            orders.append(int(item))
        except ValueError:
            raise PatternSyntaxError("expected an integer", text, offset) from None
        offset += len(item) + 1
    return orders


def build_parser() -> argparse.ArgumentParser:
    common = StrataArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--verbose", action="store_true", help="log derived quantities to stderr")
    common.add_argument("--output", metavar="FILE", help="write the report to FILE instead of stdout")

    parser = StrataArgumentParser(
        prog="strataspin",
        description="Invariants of strata of Abelian and quadratic differentials.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    stratum = commands.add_parser("stratum", help="stratum-level facts")
    stratum_commands = stratum.add_subparsers(dest="action", required=True)
    info = stratum_commands.add_parser("info", parents=[common], help="genus, dimension, non-emptiness, connectedness")
    info.add_argument("pattern", help='stratum notation, e.g. "Q(1^4,8,2,3^2)"')

    cover = commands.add_parser("cover", parents=[common], help="orientation double cover of a quadratic pattern")
    cover.add_argument("pattern")
    cover.add_argument("--keep-marked", action="store_true", help="keep regular preimages as marked points")

    spin = commands.add_parser("spin", parents=[common], help="spin parity by the closed, sum and Arf routes")
    spin.add_argument("pattern")

    arf = commands.add_parser("arf", help="Z2 quadratic forms")
    arf_commands = arf.add_subparsers(dest="action", required=True)
    chain = arf_commands.add_parser(
        "chain", parents=[common],
        help='chain form of odd orders; write "(-1,1,3,5)" or "-- -1,1,3,5" when the first order is negative',
    )
    chain.add_argument("orders")
    count = arf_commands.add_parser("count", parents=[common], help="count forms of each Arf value")
    count.add_argument("--genus", type=int, required=True)

    billiard = commands.add_parser("billiard", help="rational polygon billiards")
    billiard_commands = billiard.add_subparsers(dest="action", required=True)
    classify_parser = billiard_commands.add_parser("classify", parents=[common], help="unfold and classify a table")
    classify_parser.add_argument("--angles", required=True, help="angles as multiples of pi, e.g. 11/14,1/7,1/14")
    classify_parser.add_argument("--relax", action="store_true", help="skip the polygon angle-sum checks")

    enumerate_parser = commands.add_parser("enumerate", parents=[common], help="list valid patterns up to a sum")
    enumerate_parser.add_argument("--flavor", choices=[f.value for f in Flavor], default="Q")
    enumerate_parser.add_argument("--max-sum", type=int, required=True)
    enumerate_parser.add_argument("--max-zero-mass", type=int, help="bound on the total order of zeros (default max-sum + 4)")
    enumerate_parser.add_argument("--max-entries", type=int, help="bound on the number of singularities")
    enumerate_parser.add_argument("--workers", type=int, help="worker processes (default from STRATASPIN_WORKERS)")

    commands.add_parser("selftest", parents=[common], help="run the cross-route corpus")
    return parser


def build_report(args: argparse.Namespace) -> dict:
    command = args.command
    if command == "stratum":
        return stratum_report(parse_pattern(args.pattern))
    if command == "cover":
        return cover_report(parse_pattern(args.pattern), keep_marked=args.keep_marked)
    if command == "spin":
        return spin_report(parse_pattern(args.pattern))
    if command == "arf" and args.action == "chain":
        return arf_chain_report(parse_orders(args.orders))
    if command == "arf":
        return arf_count_report(args.genus)
    if command == "billiard":
        return billiard_report(classify(parse_angles(args.angles, relax_polygon=args.relax)))
    if command == "enumerate":
        flavor = Flavor(args.flavor)
        zero_mass = None
        if flavor is Flavor.QUADRATIC:
            zero_mass = args.max_sum + ZERO_MASS_SLACK if args.max_zero_mass is None else args.max_zero_mass
        patterns = enumerate_patterns(flavor, args.max_sum, zero_mass, args.max_entries, args.workers)
        return enumerate_report(patterns, flavor.name.lower(), args.max_sum, zero_mass, args.max_entries)
    runner = SelfTestRunner()
    runner.run()
    return runner.report()


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one command, print its report and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_VALIDATION

    configure_logging(args.verbose)
    try:
        report = build_report(args)
    except ConsistencyError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except StrataError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except KeyboardInterrupt:
        print("\n⚠️ Operation cancelled.", file=sys.stderr)
        return EXIT_INTERRUPTED

    text = render(report, args.json)
    if args.output:
        if not export_report(text, args.output):
            return EXIT_VALIDATION
    else:
        sys.stdout.write(text)

    if not report.get("routes_agree", True):
        logger.error("cross-route checks failed")
        return EXIT_DISAGREEMENT
    return EXIT_OK


def main():
    """Main application entry point"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
