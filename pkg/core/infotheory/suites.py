"""Suites running the information checks over the routed perfect family and named strategies."""

import logging
from fractions import Fraction

import numpy as np

from core.boxes.builders import make_signalling_racbox
from core.boxes.models import BipartiteBox
from core.errors import PreconditionError
from core.reports.models import CheckResult, SuiteReport
from core.strategies.catalog import (
    depolarizing_strategy,
    fig3_strategy,
    ignore_box_strategy,
    imperfect_strategy,
    random_mixture,
)
from core.strategies.family import RoutedFamily, routed_perfect_family
from core.strategies.run import run_mixed_strategy, run_strategy

from .measures import entropy, mutual_information
from .verify import assumptions_joint, verify_lemma4, verify_theorem3, verify_theorem4

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _family(family: RoutedFamily | None, box: BipartiteBox) -> RoutedFamily:
    return family if family is not None else routed_perfect_family(box, HALF, True)


def _named(strategy_fn, box: BipartiteBox):
    return assumptions_joint(run_strategy(strategy_fn(), box))


def lemma4_suite(
    family: RoutedFamily | None = None,
    box: BipartiteBox | None = None,
    tolerance: float = 1e-12,
    trace: bool = False,
) -> SuiteReport:
    """Bob's perfect guesses of a and a xor x on every routed perfect strategy."""
    box = box or make_signalling_racbox()
    family = _family(family, box)
    on_family = verify_lemma4(family.joint, tolerance, trace)
    on_fig3 = verify_lemma4(_named(fig3_strategy, box), tolerance, trace)
    on_imperfect = verify_lemma4(_named(imperfect_strategy, box), tolerance, True)
    constant = _named(depolarizing_strategy, box)
    constant_output = float(entropy(constant.condition({"y": 0}), "a", ("y_tilde", "s")))
    checks = [
        CheckResult(
            name="gap is zero on every routed perfect strategy",
            passed=on_family.satisfied,
            value=f"{on_family.value:.3g}",
            expected="0",
        ),
        CheckResult(name="gap is zero on the bit-routing protocol", passed=on_fig3.applicable and on_fig3.satisfied),
        CheckResult(
            name="3/4 strategy is flagged and shows a strict gap",
            passed=not on_imperfect.applicable and on_imperfect.value > tolerance,
            value=f"{on_imperfect.value:.6g}",
        ),
        CheckResult(
            name="constant output a has nothing to guess at y = 0",
            passed=abs(constant_output) <= tolerance,
            value=f"{constant_output:.3g}",
        ),
    ]
    return SuiteReport.from_checks(
        "lemma4",
        checks,
        info=[on_family, on_fig3, on_imperfect],
        counts={"family": str(len(family))},
    )


def theorem4_suite(
    family: RoutedFamily | None = None,
    box: BipartiteBox | None = None,
    tolerance: float = 1e-9,
    trace: bool = False,
) -> SuiteReport:
    """The correlation tradeoff on the routed perfect family and on edge cases."""
    box = box or make_signalling_racbox()
    family = _family(family, box)
    on_family = verify_theorem4(family.joint, tolerance, trace)
    on_fig3 = verify_theorem4(_named(fig3_strategy, box), tolerance, trace)
    on_constant = verify_theorem4(_named(ignore_box_strategy, box), tolerance, trace)
    try:
        verify_theorem4(assumptions_joint(run_strategy(fig3_strategy(), box), shared=("z",)), tolerance)
        rejected = False
    except PreconditionError:
        rejected = True
    checks = [
        CheckResult(name="tradeoff holds on every routed perfect strategy", passed=on_family.satisfied),
        CheckResult(
            name="bit-routing protocol meets the tradeoff with equality",
            passed=on_fig3.satisfied and abs(on_fig3.slack) <= tolerance,
            value=f"{on_fig3.slack:.3g}",
        ),
        CheckResult(
            name="constant b~ gives a zero left-hand side",
            passed=on_constant.satisfied and abs(on_constant.value) <= tolerance,
            value=f"{on_constant.value:.3g}",
        ),
        CheckResult(name="shared variable correlated with z is rejected", passed=rejected),
    ]
    return SuiteReport.from_checks(
        "theorem4", checks, info=[on_family, on_fig3, on_constant], counts={"family": str(len(family))}
    )


def theorem3_suite(
    family: RoutedFamily | None = None,
    box: BipartiteBox | None = None,
    seed: int = 7,
    mixtures: int = 16,
    tolerance: float = 1e-9,
    trace: bool = False,
) -> SuiteReport:
    """I(z : b~, y~, y, s) <= 1/2 over the family, saturation, and seeded mixtures with |s| <= 4."""
    box = box or make_signalling_racbox()
    family = _family(family, box)
    on_family = verify_theorem3(family.joint, tolerance, trace)
    values = np.asarray(mutual_information(family.joint, "z", ("b_tilde", "y_tilde", "y", "s")), dtype=float)
    achiever = family.strategy(int(np.argmax(values))) if len(family) else None
    on_fig3 = verify_theorem3(_named(fig3_strategy, box), tolerance, trace)
    on_discard = verify_theorem3(_named(ignore_box_strategy, box), tolerance, trace)

    rng = np.random.default_rng(seed)
    mixture_max = 0.0
    mixture_ok = True
    for _ in range(mixtures if len(family) else 0):
        size = int(rng.integers(1, 5))
        members = rng.choice(len(family), size=size, replace=True)
        mixed = random_mixture(rng, [family.strategy(int(k)) for k in members])
        joint = assumptions_joint(run_mixed_strategy(mixed, box), shared=("s", "a_tilde"))
        result = verify_theorem3(joint, tolerance)
        mixture_max = max(mixture_max, result.value)
        mixture_ok = mixture_ok and result.satisfied

    checks = [
        CheckResult(name="bound holds on every routed perfect strategy", passed=on_family.satisfied),
        CheckResult(
            name="maximum over the family is 1/2",
            passed=abs(on_family.value - 0.5) <= tolerance,
            value=f"{on_family.value:.12g}",
            expected="0.5",
        ),
        CheckResult(
            name="bit-routing protocol saturates the bound",
            passed=abs(on_fig3.value - 0.5) <= tolerance,
            value=f"{on_fig3.value:.12g}",
        ),
        CheckResult(
            name="discarding b~ leaves no information about z",
            passed=abs(on_discard.value) <= tolerance,
            value=f"{on_discard.value:.3g}",
        ),
        CheckResult(
            name="seeded mixtures with |s| <= 4 respect the bound",
            passed=mixture_ok,
            value=f"{mixture_max:.12g}",
            detail=f"{mixtures} mixtures, seed {seed}",
        ),
    ]
    report = SuiteReport.from_checks(
        "theorem3",
        checks,
        info=[on_family, on_fig3],
        counts={"family": str(len(family)), "mixtures": str(mixtures)},
        counterexamples=[] if on_family.satisfied or achiever is None else [achiever.describe()],
        notes=[f"maximum attained by {achiever.describe()}"] if achiever else [],
    )
    logger.info("Information bound on %d routed strategies: max %.12g", len(family), on_family.value)
    return report
