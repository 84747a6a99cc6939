"""The ``verify`` subcommand."""
import argparse
from pathlib import Path

from reflekt.commands.output import report_table
from reflekt.services.group import GroupKey
from reflekt.services.suite import SUITES, default_grid, parse_checks, parse_grid, run_suite


def verify(args: argparse.Namespace) -> int:
    """
    Run the suites and print the table; write the JSON report when --json is given.

    Returns the process exit code: 0 all pass, 1 any check failed.
    """
    if args.key:
        grid = [GroupKey.parse(k) for k in args.key]
    elif args.grid is not None:
        grid = parse_grid(args.grid)
    else:
        grid = default_grid()
    suites = parse_checks(args.check) if args.check else list(SUITES)
    report = run_suite(grid, suites)
    print(report_table(report))
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    return report.exit_code
