"""Command-line entry point: argument parsing, settings overrides and logging setup."""
import argparse
import logging
import sys
from typing import Optional, Sequence

from reflekt import __version__
from reflekt.commands import queries, verify
from reflekt.errors import ParameterError, ReflektError
from reflekt.services.suite import parse_checks
from reflekt.settings import settings

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="Cache directory (env REFLEKT_CACHE)")
    common.add_argument("--budget", type=int, help="Largest group to enumerate, in elements")
    common.add_argument("--json", help="Also write the JSON output to this path")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--workers", type=int, help="Keys verified in parallel")
    common.add_argument("--timings", action="store_true", help="Record elapsed_ms per check")
    common.add_argument("--grid", help='Grid such as "r<=6,p|r,n<=3" or "4,2,2;2,2,4" (verify, cache)')
    common.add_argument("--check", help="Comma-separated suites: group,chars,involutions,gelfand,gim,aut,classify")

    parser = argparse.ArgumentParser(prog="reflekt", description="Exact verification workbench for G(r,p,n)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="Run verification suites over a grid")
    p.add_argument("--key", action="append", help="A single key r,p,n (repeatable)")
    p.set_defaults(handler=verify.verify)

    for name, handler, help_text in (
        ("group", queries.group, "Order, classes and center of one group"),
        ("chars", queries.chars, "Irreducible character degrees"),
        ("gelfand", queries.gelfand, "Gelfand checks for every model variant"),
        ("gim", queries.gim, "Generalized involution model with respect to the inverse transpose"),
        ("aut", queries.aut, "Automorphism group order"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("key", help="Group key r,p,n")
        if name == "chars":
            p.add_argument("--values", action="store_true", help="Include value tables")
        if name == "aut":
            p.add_argument("--enumerate", action="store_true", help="Enumerate even above the aut budget")
        p.set_defaults(handler=handler)

    p = sub.add_parser("cache", parents=[common], help="Cache round-trip checks and cleanup")
    p.add_argument("--key", action="append", help="Key to round-trip (repeatable)")
    p.add_argument("--purge", action="store_true", help="Delete cache files with another format version")
    p.set_defaults(handler=queries.cache)
    return parser


def _apply_overrides(args: argparse.Namespace) -> None:
    if args.cache_dir is not None:
        settings.cache_dir = args.cache_dir
    if args.budget is not None:
        settings.budget = args.budget
    if args.workers is not None:
        settings.workers = args.workers
    if args.timings:
        settings.report_timings = True
    if args.log_level is not None:
        settings.log_level = args.log_level


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI; returns 0 when everything passes, 1 on a failed check, 2 on a usage error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    _apply_overrides(args)
    logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(settings.log_level)
    try:
        if args.check is not None:
            parse_checks(args.check)
        return args.handler(args)
    except ParameterError as e:
        logger.error(f"Usage error: {e}")
        return 2
    except (ReflektError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
