"""`racbox verify`: run verification suites in dependency order."""

import argparse
import logging
from fractions import Fraction
from functools import cached_property
from typing import Callable

from core.boxes import BipartiteBox, make_signalling_racbox, verify_lemma1
from core.infotheory.suites import lemma4_suite, theorem3_suite, theorem4_suite
from core.infotheory.verify import lemma5_suite
from core.reports.models import ReportKind, RunReport, SuiteReport
from core.settings.types import RunConfig
from core.strategies.family import RoutedFamily, routed_perfect_family
from core.strategies.sweep import SweepResult, sweep_perfect_strategies
from core.strategies.verify import lemma2_suite, verify_chsh_classical, verify_lemma3, verify_table2, verify_theorem1

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
SUITE_ORDER = (
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "lemma5",
    "chsh",
    "theorem4",
    "theorem3",
    "theorem1",
    "tables",
)


class SuiteContext:
    """Resources shared between suites of one run, built on first use."""

    def __init__(self, config: RunConfig, progress: bool):
        self.config = config
        self.progress = progress

    @cached_property
    def box(self) -> BipartiteBox:
        return make_signalling_racbox()

    @cached_property
    def family(self) -> RoutedFamily:
        return routed_perfect_family(self.box, HALF, True)

    @cached_property
    def sweep(self) -> SweepResult:
        return sweep_perfect_strategies(
            self.box, HALF, True, self.config.parallelism, progress=self.progress
        )


def _runners(ctx: SuiteContext) -> dict[str, Callable[[], SuiteReport]]:
    c = ctx.config
    return {
        "lemma1": verify_lemma1,
        "lemma2": lambda: lemma2_suite(seed=c.seed, box=ctx.box),
        "lemma3": lambda: verify_lemma3(ctx.family, ctx.box),
        "lemma4": lambda: lemma4_suite(ctx.family, ctx.box, c.identity_tolerance, c.trace),
        "lemma5": lambda: lemma5_suite(c.samples, c.seed, c.identity_tolerance),
        "chsh": lambda: verify_chsh_classical(ctx.box, c.float_tolerance),
        "theorem4": lambda: theorem4_suite(ctx.family, ctx.box, c.float_tolerance, c.trace),
        "theorem3": lambda: theorem3_suite(
            ctx.family, ctx.box, seed=c.seed, tolerance=c.float_tolerance, trace=c.trace
        ),
        "theorem1": lambda: verify_theorem1(
            ctx.box,
            sweep=ctx.sweep,
            parallelism=c.parallelism,
            tolerance=c.float_tolerance,
            progress=ctx.progress,
        ),
        "tables": lambda: verify_table2(sweep=ctx.sweep, box=ctx.box),
    }


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("verify", parents=parents, help="Run verification suites")
    parser.add_argument("suite", choices=(*SUITE_ORDER, "all"), help="Suite to run, or 'all'")
    parser.set_defaults(handler=run)


def run_suites(names: tuple[str, ...], config: RunConfig, progress: bool = True) -> tuple[list[SuiteReport], list[str]]:
    """Run suites in order; after a failure the rest are skipped unless keep_going is set."""
    ctx = SuiteContext(config, progress)
    runners = _runners(ctx)
    reports: list[SuiteReport] = []
    skipped: list[str] = []
    for name in names:
        if reports and not reports[-1].passed and not config.keep_going:
            skipped.append(name)
            continue
        logger.info("Running suite %s", name)
        report = runners[name]()
        logger.info("Suite %s: %s", name, "pass" if report.passed else "FAIL")
        reports.append(report)
    return reports, skipped


def run(args: argparse.Namespace, config: RunConfig) -> RunReport:
    names = SUITE_ORDER if args.suite == "all" else (args.suite,)
    reports, skipped = run_suites(names, config, progress=not args.quiet)
    return RunReport(
        kind=ReportKind.VERIFY,
        command=f"verify {args.suite}",
        passed=all(r.passed for r in reports) and not skipped,
        config=config.report_fields(),
        suites=reports,
        skipped=skipped,
    )
