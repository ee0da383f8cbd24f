"""`racbox box`: build or load a box and check one property."""

import argparse
from typing import Callable

from core.boxes import (
    BipartiteBox,
    SignallingVerdict,
    check_nonsignalling,
    chsh_score,
    dumps_box,
    is_perfect_rac,
    is_racbox,
    make_nonsignalling_racbox,
    make_pr_box,
    make_rac_box,
    make_signalling_racbox,
    read_box_file,
    satisfies_pr_correlations,
)
from core.errors import PreconditionError
from core.rational import format_fraction
from core.reports.models import CheckResult, ReportKind, RunReport, SuiteReport
from core.settings.types import RunConfig

BUILDERS: dict[str, Callable[[], BipartiteBox]] = {
    "pr": make_pr_box,
    "ns-racbox": make_nonsignalling_racbox,
    "sig-racbox": make_signalling_racbox,
    "rac": make_rac_box,
}
NAMES = (*BUILDERS, "file")
ACTIONS = ("show", "check-nosig", "check-racbox", "check-pr", "check-rac")

# (a_to_b, b_to_a) signalling expected from each named box
EXPECTED_SIGNALLING = {
    "pr": (False, False),
    "ns-racbox": (False, False),
    "sig-racbox": (True, False),
    "rac": (True, False),
}


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("box", parents=parents, help="Show or check a box")
    parser.add_argument("name", choices=NAMES, help="Named box, or 'file' with --box-file")
    parser.add_argument("action", choices=ACTIONS, help="What to print or check")
    parser.set_defaults(handler=run)


def load_box(name: str, box_file: str | None) -> BipartiteBox:
    """Build a named box or read one from --box-file."""
    if name == "file":
        if not box_file:
            raise PreconditionError("box 'file' needs --box-file")
        return read_box_file(box_file)
    return BUILDERS[name]()


def describe_verdict(verdict: SignallingVerdict) -> str:
    """One-line account of a no-signalling verdict and its witness."""
    if verdict.witness is None:
        return "nonsignalling in both directions"
    w = verdict.witness

    def marginal(m: dict) -> str:
        return "{" + ", ".join(f"{''.join(map(str, k))}: {format_fraction(p)}" for k, p in sorted(m.items())) + "}"

    return (
        f"{w.direction} signalling at receiver inputs {w.receiver_inputs}: "
        f"sender inputs {w.sender_inputs[0]} give {marginal(w.marginals[0])}, "
        f"{w.sender_inputs[1]} give {marginal(w.marginals[1])}"
    )


def _nosig_checks(name: str, box: BipartiteBox) -> list[CheckResult]:
    verdict = check_nonsignalling(box)
    observed = f"a_to_b={verdict.a_to_b}, b_to_a={verdict.b_to_a}"
    expected = EXPECTED_SIGNALLING.get(name)
    return [
        CheckResult(
            name="no-signalling verdict",
            passed=expected is None or (verdict.a_to_b, verdict.b_to_a) == expected,
            value=observed,
            expected=None if expected is None else f"a_to_b={expected[0]}, b_to_a={expected[1]}",
            detail=describe_verdict(verdict),
        )
    ]


def _predicate_check(label: str, holds: bool, name: str, expected_for: set[str]) -> CheckResult:
    expected = None if name == "file" else name in expected_for
    return CheckResult(
        name=label,
        passed=expected is None or holds == expected,
        value=str(holds).lower(),
        expected=None if expected is None else str(expected).lower(),
    )


def run(args: argparse.Namespace, config: RunConfig) -> RunReport:
    """Evaluate one action; SignatureError on a mismatched box propagates as a usage error."""
    box = load_box(args.name, args.box_file)
    tables: dict[str, list[str]] = {}
    if args.action == "show":
        tables[args.name] = dumps_box(box).splitlines()
        checks = [CheckResult(name="table is complete and normalized", passed=True)]
    elif args.action == "check-nosig":
        checks = _nosig_checks(args.name, box)
    elif args.action == "check-racbox":
        checks = [_predicate_check("acts as a RAC whenever a = y'", is_racbox(box), args.name, {"ns-racbox", "sig-racbox"})]
    elif args.action == "check-pr":
        holds = satisfies_pr_correlations(box)
        check = _predicate_check("a xor b = xy with certainty", holds, args.name, {"pr"})
        check.detail = f"CHSH score {format_fraction(chsh_score(box))}"
        checks = [check]
    else:
        checks = [_predicate_check("b = x_y with certainty", is_perfect_rac(box), args.name, {"rac"})]

    suite = SuiteReport.from_checks(f"box {args.action}", checks)
    return RunReport(
        kind=ReportKind.BOX,
        command=f"box {args.name} {args.action}",
        passed=suite.passed,
        config=config.report_fields(),
        suites=[suite],
        tables=tables,
    )
