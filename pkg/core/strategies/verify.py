"""Verification suites over the strategy space of a racbox plus one bit."""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Any, Mapping, Sequence

import numpy as np

from core.boxes.builders import make_nonsignalling_racbox, make_signalling_racbox
from core.boxes.models import BipartiteBox
from core.channels import (
    ChannelKind,
    classify_channel,
    erasure_overlap,
    erasure_to_amplitude_damping,
    is_postprocessing_of_erasure,
)
from core.errors import PreconditionError
from core.infotheory.distribution import JointDistribution, joint_from_box
from core.infotheory.measures import guessed_information
from core.infotheory.verify import assumptions_joint, chsh_guessed
from core.rational import format_fraction
from core.reports.models import ChannelRow, CheckResult, SuiteReport

from .catalog import (
    depolarizing_strategy,
    fig3_strategy,
    ignore_box_strategy,
    imperfect_strategy,
    nonsignalling_transmission_strategy,
    random_mixture,
    random_strategy,
    table_case_strategy,
)
from .enumerate import strategy_space_size
from .family import RoutedFamily, routed_perfect_family
from .models import DeterministicStrategy, MixedStrategy
from .run import (
    JOINT_NAMES,
    compose_mixed_strategy,
    induced_channel,
    pr_success_probability,
    run_mixed_strategy,
    run_strategy,
)
from .sweep import BRANCHES, SweepResult, perfect_decoder, sweep_perfect_strategies

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
KNOWN_KINDS = {
    ChannelKind.ERASURE,
    ChannelKind.AMPLITUDE_DAMPING,
    ChannelKind.DEPOLARIZING,
    ChannelKind.ZERO_CAPACITY,
}
MAX_COUNTEREXAMPLES = 10


def _strategy_record(strategy: DeterministicStrategy) -> dict[str, Any]:
    return {"indices": list(strategy.indices()), "branch": strategy.branch(), **strategy.describe()}


def verify_theorem1(
    box: BipartiteBox | None = None,
    sweep: SweepResult | None = None,
    parallelism: int = 1,
    tolerance: float = 1e-9,
    progress: bool = True,
    contrast: bool = True,
) -> SuiteReport:
    """Every perfect strategy's z channel is a postprocessing of Erasure(1/2).

    Sweeps the full strategy space (general Alice output, uniform x, z, y)
    unless a complete sweep is given.
    """
    box = box or make_signalling_racbox()
    if sweep is None:
        sweep = sweep_perfect_strategies(box, HALF, True, parallelism, progress=progress)
    if sweep.p_y1 != HALF:
        raise PreconditionError("the erasure bound is stated for uniform y", p_y1=format_fraction(sweep.p_y1))

    counterexamples: list[dict[str, Any]] = []
    disagreements = 0
    information_breaches = 0
    unknown_kinds: set[str] = set()
    constant_input_leaks = 0
    unrouted_classes: set[str] = set()
    groups: dict[tuple[str, str, str], dict[str, Any]] = {}

    for key, entry in sorted(sweep.entries.items()):
        branch = sweep.branch(key)
        z_channel, x_channel = sweep.channels(key)
        z_class, x_class = classify_channel(z_channel), classify_channel(x_channel)
        by_lp = is_postprocessing_of_erasure(z_channel, HALF, "lp", tolerance)
        by_overlap = is_postprocessing_of_erasure(z_channel, HALF, "exact")
        information = z_channel.mutual_information()
        disagreements += by_lp != by_overlap
        information_breaches += by_lp and information > 0.5 + tolerance
        for cls in (z_class, x_class):
            if cls.kind not in KNOWN_KINDS:
                unknown_kinds.add(str(cls))
        if branch == "routed/constant_input" and z_class.kind != ChannelKind.ZERO_CAPACITY:
            constant_input_leaks += 1
        if branch == "unrouted":
            unrouted_classes.add(str(z_class))
        if not (by_lp and by_overlap) and len(counterexamples) < MAX_COUNTEREXAMPLES:
            counterexamples.append(
                {
                    "z_channel": str(z_class),
                    "overlap": format_fraction(erasure_overlap(z_channel)),
                    "strategy": _strategy_record(perfect_decoder(entry.representative, box, sweep.p_y1)),
                }
            )

        group = groups.setdefault(
            (branch, str(z_class), str(x_class)),
            {"z": z_class, "x": x_class, "strategies": 0, "mi": 0.0, "ok": True, "rep": entry.representative},
        )
        group["strategies"] += entry.strategies
        group["mi"] = max(group["mi"], information)
        group["ok"] = group["ok"] and by_lp and by_overlap
        group["rep"] = min(group["rep"], entry.representative)

    rows = [
        ChannelRow(
            branch=branch,
            z_channel=g["z"].kind.value,
            z_parameter=None if g["z"].parameter is None else format_fraction(g["z"].parameter),
            x_channel=g["x"].kind.value,
            x_parameter=None if g["x"].parameter is None else format_fraction(g["x"].parameter),
            strategies=str(g["strategies"]),
            mutual_information=g["mi"],
            erasure_postprocessing=g["ok"],
            representative=_strategy_record(perfect_decoder(g["rep"], box, sweep.p_y1)),
        )
        for (branch, _, _), g in sorted(groups.items())
    ]

    fig3 = run_strategy(fig3_strategy(), box)
    fig3_class = classify_channel(induced_channel(fig3))
    depolarizing_half = "depolarizing(1/2)"
    sends_x = run_strategy(depolarizing_strategy(), box)
    sends_x_class = classify_channel(induced_channel(sends_x))
    checks = [
        CheckResult(
            name="whole strategy space swept",
            passed=sweep.complete and sweep.examined_strategies == strategy_space_size(True),
            value=str(sweep.examined_strategies),
            expected=str(strategy_space_size(True)),
        ),
        CheckResult(
            name="perfect strategies exist",
            passed=sweep.perfect_strategies > 0,
            value=str(sweep.perfect_strategies),
        ),
        CheckResult(
            name="every z channel is a postprocessing of Erasure(1/2)",
            passed=not counterexamples,
            value=str(len(counterexamples)),
            expected="0",
        ),
        CheckResult(name="LP and overlap criteria agree", passed=disagreements == 0, value=str(disagreements)),
        CheckResult(
            name="accepted channels carry at most 1/2 bit about z",
            passed=information_breaches == 0,
            value=str(information_breaches),
        ),
        CheckResult(
            name="channel classes are erasure, amplitude damping, depolarizing or zero capacity",
            passed=not unknown_kinds,
            value=", ".join(sorted(unknown_kinds)) or None,
        ),
        CheckResult(
            name="routed strategies with constant y~ give zero capacity",
            passed=constant_input_leaks == 0,
            value=str(constant_input_leaks),
        ),
        CheckResult(
            name="unrouted perfect strategies include the depolarizing(1/2) channel",
            passed=depolarizing_half in unrouted_classes,
            value=", ".join(sorted(unrouted_classes)),
        ),
        CheckResult(
            name="Erasure(1/2) through the bit-routing protocol",
            passed=pr_success_probability(fig3) == 1 and str(fig3_class) == "erasure(1/2)",
            value=str(fig3_class),
            expected="erasure(1/2)",
        ),
        CheckResult(
            name="sending x instead of a~ leaves a depolarizing(1/2) channel",
            passed=pr_success_probability(sends_x) == 1 and str(sends_x_class) == depolarizing_half,
            value=str(sends_x_class),
            expected=depolarizing_half,
        ),
    ]
    if contrast:
        checks.append(nonsignalling_contrast(parallelism, progress))

    counts = {
        "examined_strategies": str(sweep.examined_strategies),
        "perfect_strategies": str(sweep.perfect_strategies),
        "perfect_prefixes": str(sweep.perfect_prefixes),
        "channel_keys": str(len(sweep.entries)),
    }
    for branch in BRANCHES:
        counts[f"perfect_{branch}"] = str(
            sum(e.strategies for k, e in sweep.entries.items() if sweep.branch(k) == branch)
        )
    report = SuiteReport.from_checks(
        "theorem1", checks, counts=counts, channels=rows, counterexamples=counterexamples
    )
    logger.info("Exhaustive erasure bound: %s (%d perfect strategies)", "pass" if report.passed else "FAIL", sweep.perfect_strategies)
    return report


def nonsignalling_contrast(parallelism: int = 1, progress: bool = True) -> CheckResult:
    """On the nonsignalling racbox some perfect strategy sends z without noise."""
    box = make_nonsignalling_racbox()
    sweep = sweep_perfect_strategies(box, HALF, False, parallelism, progress=progress)
    noiseless = sum(
        e.strategies for k, e in sweep.entries.items() if erasure_overlap(sweep.channels(k)[0]) == 0
    )
    joint = run_strategy(nonsignalling_transmission_strategy(), box)
    direct = pr_success_probability(joint) == 1 and erasure_overlap(induced_channel(joint)) == 0
    return CheckResult(
        name="nonsignalling racbox admits perfect strategies with a noiseless z channel",
        passed=noiseless > 0 and direct,
        value=str(noiseless),
        detail="the erasure bound is specific to the signalling racbox",
    )


TABLE_CASES = {
    1: ("erasure(1/2)", "erasure(1/2)"),
    2: ("amplitude_damping(1/2)", "amplitude_damping(1/2)"),
    3: ("amplitude_damping(3/4)", "amplitude_damping(1/4)"),
}


def verify_table2(sweep: SweepResult | None = None, box: BipartiteBox | None = None) -> SuiteReport:
    """Channel-class pairs (x -> Bob, z -> Bob) of routed perfect strategies.

    Among routed perfect strategies where both channels carry information the
    pairs are exactly erasure/erasure and amplitude damping/amplitude damping.
    The representative cases and the erasure to amplitude-damping
    relabeling are checked as exact tables.
    """
    box = box or make_signalling_racbox()
    sweep = sweep or sweep_perfect_strategies(box, HALF, True, progress=False)
    pairs: dict[tuple[str, str], int] = defaultdict(int)
    for key, entry in sweep.entries.items():
        if not sweep.branch(key).startswith("routed"):
            continue
        z_channel, x_channel = sweep.channels(key)
        z_kind, x_kind = classify_channel(z_channel).kind, classify_channel(x_channel).kind
        if ChannelKind.ZERO_CAPACITY in (z_kind, x_kind):
            continue
        pairs[(x_kind.value, z_kind.value)] += entry.strategies
    expected = {
        (ChannelKind.ERASURE.value, ChannelKind.ERASURE.value),
        (ChannelKind.AMPLITUDE_DAMPING.value, ChannelKind.AMPLITUDE_DAMPING.value),
    }
    checks = [
        CheckResult(
            name="routed channel pairs with positive capacity",
            passed=set(pairs) == expected,
            value=", ".join(f"{x}/{z}" for x, z in sorted(pairs)),
            expected=", ".join(f"{x}/{z}" for x, z in sorted(expected)),
        )
    ]

    case_channels = {}
    for case, (z_expected, x_expected) in TABLE_CASES.items():
        strategy = table_case_strategy(case)
        joint = run_strategy(strategy, box)
        z_channel, x_channel = induced_channel(joint, "z"), induced_channel(joint, "x")
        case_channels[case] = (z_channel, x_channel)
        observed = (str(classify_channel(z_channel)), str(classify_channel(x_channel)))
        checks.append(
            CheckResult(
                name=f"case {case}: perfect routed strategy with the listed channels",
                passed=pr_success_probability(joint) == 1
                and strategy.branch() == "routed/varying_input"
                and observed == (z_expected, x_expected),
                value=f"z: {observed[0]}, x: {observed[1]}",
                expected=f"z: {z_expected}, x: {x_expected}",
            )
        )

    z_two, x_two = case_channels[2]
    _, mirrored = erasure_to_amplitude_damping(HALF, (0, 1))
    _, one_sided = erasure_to_amplitude_damping(HALF, (0, 0))
    checks += [
        CheckResult(
            name="flag relabeling of Erasure(1/2) gives the case 2 z channel",
            passed=mirrored.canonical().table == z_two.canonical().table,
        ),
        CheckResult(
            name="flag relabeling of Erasure(1/2) gives the case 2 x channel",
            passed=one_sided.canonical().table == x_two.canonical().table,
        ),
        CheckResult(
            name="relabeled channels are postprocessings of Erasure(1/2)",
            passed=all(is_postprocessing_of_erasure(ch, HALF) for ch in (mirrored, one_sided)),
        ),
    ]
    report = SuiteReport.from_checks(
        "tables", checks, counts={f"{x}/{z}": str(n) for (x, z), n in sorted(pairs.items())}
    )
    logger.info("Channel-pair table: %s", "pass" if report.passed else "FAIL")
    return report


def _decomposition_checks(
    mixed: MixedStrategy, box: BipartiteBox, input_dist: Mapping[str, Sequence[Fraction]] | None, label: str
) -> list[CheckResult]:
    mixture = run_mixed_strategy(mixed, box, input_dist)
    composed = compose_mixed_strategy(mixed, box, input_dist)
    successes = [pr_success_probability(run_strategy(c, box, input_dist)) for c in mixed.components]
    combined = sum((w * p for w, p in zip(mixed.weights, successes)), Fraction(0))
    overall = pr_success_probability(mixture.marginal(JOINT_NAMES))
    checks = [
        CheckResult(
            name=f"{label}: composed wiring equals the convex combination",
            passed=composed.same_as(mixture.marginal(JOINT_NAMES)),
        ),
        CheckResult(
            name=f"{label}: success is the weighted success of the components",
            passed=overall == combined,
            value=format_fraction(overall),
            expected=format_fraction(combined),
        ),
        CheckResult(
            name=f"{label}: perfect mixture only from perfect components",
            passed=overall < 1 or all(p == 1 for w, p in zip(mixed.weights, successes) if w),
        ),
    ]
    if len(mixed.components) == 1:
        checks.append(
            CheckResult(
                name=f"{label}: singleton mixture is the strategy itself",
                passed=composed.same_as(run_strategy(mixed.components[0], box, input_dist)),
            )
        )
    return checks


def verify_lemma2_decomposition(
    mixed: MixedStrategy,
    box: BipartiteBox | None = None,
    input_dist: Mapping[str, Sequence[Fraction]] | None = None,
) -> SuiteReport:
    """A strategy mixed over shared s behaves as the mixture of its deterministic parts."""
    box = box or make_signalling_racbox()
    return SuiteReport.from_checks("lemma2", _decomposition_checks(mixed, box, input_dist, "mixture"))


def lemma2_suite(seed: int = 7, random_mixtures: int = 3, box: BipartiteBox | None = None) -> SuiteReport:
    """Decomposition checks on fixed and seeded random mixtures."""
    box = box or make_signalling_racbox()
    rng = np.random.default_rng(seed)
    fixed = {
        "two perfect strategies": MixedStrategy((fig3_strategy(), table_case_strategy(2)), (HALF, HALF)),
        "perfect and 3/4 strategies": MixedStrategy((fig3_strategy(), imperfect_strategy()), (HALF, HALF)),
        "singleton": MixedStrategy((fig3_strategy(),), (Fraction(1),)),
    }
    checks: list[CheckResult] = []
    for label, mixed in fixed.items():
        checks += _decomposition_checks(mixed, box, None, label)
    half_success = pr_success_probability(run_mixed_strategy(fixed["perfect and 3/4 strategies"], box).marginal(JOINT_NAMES))
    checks.append(
        CheckResult(
            name="mixing in a 3/4 strategy at weight 1/2 loses perfection",
            passed=half_success == Fraction(7, 8),
            value=format_fraction(half_success),
            expected="7/8",
        )
    )
    for i in range(random_mixtures):
        size = int(rng.integers(2, 5))
        mixed = random_mixture(rng, [random_strategy(rng) for _ in range(size)])
        checks += _decomposition_checks(mixed, box, None, f"random mixture {i} (|s| = {size})")
    return SuiteReport.from_checks("lemma2", checks, counts={"seed": str(seed)})


def verify_lemma3(family: RoutedFamily | None = None, box: BipartiteBox | None = None) -> SuiteReport:
    """Perfect strategies leave some (x, y) pair impossible for every value of b~.

    The family is the routed perfect strategies whose output a depends on
    (x, a~) only, with s = a~ held by both parties. Values of b~ excluding two
    or more pairs are tagged degenerate and reported separately.
    """
    box = box or make_signalling_racbox()
    if family is None:
        full = routed_perfect_family(box, HALF, True)
        family = full.subset(full.output_ignores_z())
    weights = family.joint.marginal(("s", "b_tilde", "x", "y")).weights  # (n, s, b~, x, y)
    flat = weights.reshape(len(family), 2, 2, 4)
    mass = flat.sum(axis=-1)
    excluded = (flat == 0).sum(axis=-1)
    violating = np.nonzero(((mass > 0) & (excluded == 0)).any(axis=(1, 2)))[0]
    degenerate = int(((mass > 0) & (excluded >= 2)).any(axis=(1, 2)).sum())
    counterexamples = [_strategy_record(family.strategy(int(k))) for k in violating[:MAX_COUNTEREXAMPLES]]

    case_two = run_strategy(table_case_strategy(2), box)
    p = case_two.marginal(("x", "y", "b_tilde")).exact_probabilities()
    ignore = run_strategy(ignore_box_strategy(), box)
    q = ignore.marginal(("b_tilde", "x", "y")).exact_probabilities()
    checks = [
        CheckResult(
            name="every b~ value excludes some (x, y) pair",
            passed=violating.size == 0,
            value=str(int(violating.size)),
            expected="0",
        ),
        CheckResult(name="family is not empty", passed=len(family) > 0, value=str(len(family))),
        CheckResult(
            name="case 2: b~ = 0 never occurs with x = 0, y = 1",
            passed=p[0, 1, 0] == 0,
            value=format_fraction(p[0, 1, 0]),
        ),
        CheckResult(
            name="case 2: b~ = 1 never occurs with x = 0, y = 0",
            passed=p[0, 0, 1] == 0,
            value=format_fraction(p[0, 0, 1]),
        ),
        CheckResult(
            name="b~ supporting all four pairs cannot give perfect correlations",
            passed=bool(np.all(q[0] > 0)) and pr_success_probability(ignore) < 1,
            value=format_fraction(pr_success_probability(ignore)),
        ),
    ]
    report = SuiteReport.from_checks(
        "lemma3",
        checks,
        counts={"family": str(len(family)), "degenerate": str(degenerate)},
        counterexamples=counterexamples,
        notes=[f"{degenerate} strategies have a b~ value excluding two or more (x, y) pairs"],
    )
    logger.info("Excluded-pair check on %d strategies: %s", len(family), "pass" if report.passed else "FAIL")
    return report


def _classical_joints() -> JointDistribution:
    """All 256 no-box strategies a = f(x, s), X = g(y, s) with uniform x, y, s, batched."""
    weights = np.zeros((256, 2, 2, 2, 2, 2), dtype=np.int64)  # (pair, x, y, s, a, X)
    for k, (f, g) in enumerate(itertools.product(range(16), repeat=2)):
        for x, y, s in itertools.product((0, 1), repeat=3):
            weights[k, x, y, s, (f >> (2 * x + s)) & 1, (g >> (2 * y + s)) & 1] = 1
    return JointDistribution(("x", "y", "s", "a", "message"), weights, batch_ndim=1)


def verify_chsh_classical(box: BipartiteBox | None = None, tolerance: float = 1e-9) -> SuiteReport:
    """Guessed-information form of the CHSH bound without a box, and what boxes change."""
    box = box or make_signalling_racbox()
    classical = _classical_joints()
    report = chsh_guessed(classical, observed=("message",), shared=("s",), tolerance=tolerance)
    perfect = chsh_guessed(assumptions_joint(run_strategy(fig3_strategy(), box)), tolerance=tolerance)
    racbox = joint_from_box(box).condition({"y": 0, "y_prime": 0})
    guess = guessed_information(racbox, "b", "x0")
    checks = [
        CheckResult(
            name="no-box strategies stay within 3/4",
            passed=report.satisfied,
            value=f"{report.value:.12g}",
            expected="<= 0.75",
        ),
        CheckResult(
            name="3/4 is attained without a box",
            passed=abs(report.value - 0.75) <= tolerance,
            value=f"{report.value:.12g}",
        ),
        CheckResult(
            name="perfect strategy on the racbox guesses both a and a xor x",
            passed=abs(perfect.value - 1) <= tolerance,
            value=f"{perfect.value:.12g}",
            expected="1",
            detail="exceeds 3/4 as expected with the box",
        ),
        CheckResult(
            name="signalling racbox reveals x0 with probability 3/4 at y = y' = 0",
            passed=guess == Fraction(3, 4),
            value=format_fraction(guess),
            expected="3/4",
        ),
    ]
    return SuiteReport.from_checks("chsh", checks, info=[report], counts={"strategies": "256"})
