"""Command-line entry point for racbox."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from core.errors import RacboxError
from core.reports.registry import ReportRegistry
from core.reports.store import ReportStore
from core.settings.manager import ConfigManager
from core.settings.types import RunConfig

from .commands import box, protocol, verify
from .render import render

logger = logging.getLogger("racbox")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _common_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand; unset flags leave config values alone."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Seed for random joints and mixtures")
    common.add_argument("--tolerance", dest="float_tolerance", type=float, default=None, help="Bound tolerance")
    common.add_argument("--identity-tolerance", type=float, default=None, help="Tolerance for identities")
    common.add_argument("--p-y1", default=None, help="p(y = 1) as a fraction, e.g. 1/4")
    common.add_argument("--format", dest="output_format", choices=("text", "json"), default=None)
    common.add_argument("--parallelism", type=int, default=None, help="Worker threads for sweeps")
    common.add_argument("--trace", action="store_true", default=None, help="Record intermediate entropy terms")
    common.add_argument("--keep-going", action="store_true", default=None, help="Do not stop at the first failed suite")
    common.add_argument("--samples", type=int, default=None, help="Random joints for property suites")
    common.add_argument("--box-file", default=None, help="Box in the canonical text format")
    common.add_argument("--wiring-file", default=None, help="Wiring in the declarative text format")
    common.add_argument("--config", type=Path, default=None, help="JSON config file")
    common.add_argument("--report-dir", type=Path, default=None, help="Save reports under this directory")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log at DEBUG")
    verbosity.add_argument("--quiet", action="store_true", help="Log warnings only, no progress bars")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="racbox",
        description="Exact checks of PR-boxes, racboxes, wirings and the strategies built on them.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [_common_parser()]
    box.register(subparsers, parents)
    protocol.register(subparsers, parents)
    verify.register(subparsers, parents)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config from defaults, file, environment, then explicit flags."""
    overrides = {name: getattr(args, name, None) for name in RunConfig.model_fields}
    return ConfigManager(args.config).load_config(overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit status."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = resolve_config(args)
        report = args.handler(args, config)
    except RacboxError as exc:
        print(f"racbox: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    sys.stdout.write(render(report, config.output_format))
    if config.report_dir is not None:
        stored = ReportRegistry(ReportStore(config.report_dir)).register(report, config.seed)
        logger.info("Saved report %s", stored.id)
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
