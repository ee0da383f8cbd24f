"""Exact joints produced by strategies around a racbox."""

from fractions import Fraction
from typing import Mapping, Sequence

from core.boxes.checks import RACBOX_SIGNATURE, check_nonsignalling
from core.boxes.models import BipartiteBox, require_signature
from core.channels.models import ClassicalChannel, channel_from_joint
from core.errors import PreconditionError, SignatureError
from core.infotheory.distribution import JointDistribution, joint_from_box
from core.rational import is_distribution, to_fraction, uniform
from core.wiring.compose import compose

from .models import DeterministicStrategy, MixedStrategy

JOINT_NAMES = ("x", "z", "y", "m", "a_tilde", "y_tilde", "y_prime", "b_tilde", "a", "b")
PROTOCOL_INPUTS = ("x", "z", "y")


def _input_distributions(input_dist: Mapping[str, Sequence[Fraction]] | None) -> dict[str, tuple[Fraction, ...]]:
    input_dist = dict(input_dist or {})
    unknown = set(input_dist) - set(PROTOCOL_INPUTS)
    if unknown:
        raise SignatureError("distributions given for unknown inputs", names=sorted(unknown))
    result = {}
    for name in PROTOCOL_INPUTS:
        dist = tuple(to_fraction(p) for p in input_dist.get(name, uniform(2)))
        if len(dist) != 2 or not is_distribution(dist):
            raise PreconditionError("input distribution must be a binary distribution", name=name)
        result[name] = dist
    return result


def _require_racbox(box: BipartiteBox) -> None:
    require_signature(box, *RACBOX_SIGNATURE)
    if check_nonsignalling(box).b_to_a:
        raise PreconditionError("racbox signals from Bob to Alice")


def run_strategy(
    strategy: DeterministicStrategy,
    box: BipartiteBox,
    input_dist: Mapping[str, Sequence[Fraction]] | None = None,
) -> JointDistribution:
    """Exact joint over x, z, y, m, a~, y~, y'~, b~, a, b.

    Bob picks y'~ after Alice's box output is fixed, so with no signalling
    from Bob to Alice the weight of (a~, b~) is the box row at the chosen
    y'~ evaluated at (a~, b~).
    """
    _require_racbox(box)
    dists = _input_distributions(input_dist)
    rows = []
    for x in (0, 1):
        for z in (0, 1):
            x0, x1 = strategy.encoded(x, z)
            for y in (0, 1):
                prior = dists["x"][x] * dists["z"][z] * dists["y"][y]
                if not prior:
                    continue
                y_tilde = strategy.y_tilde(y)
                for a_tilde in (0, 1):
                    m = strategy.message_bit(x, z, a_tilde)
                    y_prime = strategy.y_prime(y, m)
                    row = box.row({"x0": x0, "x1": x1, "y": y_tilde, "y_prime": y_prime})
                    a = strategy.output(x, z, a_tilde)
                    for b_tilde in (0, 1):
                        p = row.get((a_tilde, b_tilde), Fraction(0))
                        if p:
                            b = strategy.decode(y, y_tilde, b_tilde, m)
                            key = (x, z, y, m, a_tilde, y_tilde, y_prime, b_tilde, a, b)
                            rows.append((key, prior * p))
    return JointDistribution.from_rows(JOINT_NAMES, [2] * len(JOINT_NAMES), rows)


def run_mixed_strategy(
    mixed: MixedStrategy,
    box: BipartiteBox,
    input_dist: Mapping[str, Sequence[Fraction]] | None = None,
) -> JointDistribution:
    """Convex combination of component joints, with the component index kept as s."""
    joints = [run_strategy(c, box, input_dist) for c in mixed.components]
    return JointDistribution.mixture("s", joints, mixed.weights)


def compose_mixed_strategy(
    mixed: MixedStrategy,
    box: BipartiteBox,
    input_dist: Mapping[str, Sequence[Fraction]] | None = None,
) -> JointDistribution:
    """Joint of the mixture evaluated as a wiring around the box, named as in `run_strategy`."""
    _require_racbox(box)
    effective = compose(box, mixed.to_wiring(), mixed.randomness())
    joint = joint_from_box(effective, _input_distributions(input_dist))
    return joint.relabel({"msg": "m", "y_prime_tilde": "y_prime"}).marginal(JOINT_NAMES)


def pr_success_probability(joint: JointDistribution) -> Fraction:
    """P(a xor b = xy)."""
    joint.require("x", "y", "a", "b")
    if joint.batch_ndim:
        raise PreconditionError("pr_success_probability needs an unbatched joint")
    return joint.probability(lambda x, y, a, b: (a ^ b) == (x & y), ("x", "y", "a", "b"))


def induced_channel(
    joint: JointDistribution,
    input_name: str = "z",
    outputs: Sequence[str] = ("b_tilde",),
    flags: Sequence[str] = ("y", "m"),
) -> ClassicalChannel:
    """Channel from one of Alice's inputs to Bob's view (b~ with y and m as flags)."""
    return channel_from_joint(joint, input_name, outputs, flags)
