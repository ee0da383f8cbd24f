"""Exact composition of a wiring with an inner box."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from core.boxes.checks import check_nonsignalling
from core.boxes.models import Assignment, BipartiteBox, Row, VariableSpec, assignments
from core.channels.models import ClassicalChannel, channel_from_joint
from core.errors import PreconditionError, SignatureError, VisibilityError
from core.infotheory.distribution import JointDistribution, joint_from_box
from core.rational import to_fraction, uniform

from .gates import BOX_PREFIX, Gate, copy
from .models import MESSAGE, RandomnessSpec, Wiring

logger = logging.getLogger(__name__)


def run_gates(gates: Iterable[Gate], env: dict[str, int]) -> dict[str, int]:
    """Evaluate gates in order, extending a copy of the environment."""
    env = dict(env)
    for gate in gates:
        env.update(gate.evaluate(env))
    return env


def _check_against_inner(inner: BipartiteBox, wiring: Wiring) -> None:
    sides = {
        "alice": {s.name for s in inner.alice_inputs + inner.alice_outputs},
        "bob": {s.name for s in inner.bob_inputs + inner.bob_outputs},
    }
    for party, other in (("alice", "bob"), ("bob", "alice")):
        for name in wiring.box_references(party):
            if name in sides[other]:
                raise VisibilityError(f"{party} addresses {other}'s box variable", name=name)
            if name not in sides[party]:
                raise SignatureError("wiring addresses an unknown box variable", name=name)
    for party, inputs in (("alice", inner.alice_inputs), ("bob", inner.bob_inputs)):
        assigned = wiring.box_assignments(party)
        expected = {s.name for s in inputs}
        if assigned != expected:
            raise SignatureError(
                f"{party} pre stage must assign exactly the box inputs",
                expected=sorted(expected),
                assigned=sorted(assigned),
            )


def _box_values(env: Mapping[str, int], specs: Sequence[VariableSpec]) -> Assignment:
    values = tuple(env[BOX_PREFIX + s.name] for s in specs)
    for spec, value in zip(specs, values):
        if not 0 <= value < spec.arity:
            raise SignatureError("box input out of range", name=spec.name, value=value)
    return values


def compose(
    inner: BipartiteBox, wiring: Wiring, randomness: RandomnessSpec | None = None
) -> BipartiteBox:
    """Effective box over the wiring's protocol variables.

    Sums exactly over shared and local randomness and over the inner box's
    outcomes. Alice acts on her box output before Bob chooses his box inputs,
    so the inner box must not signal from Bob to Alice.
    """
    randomness = randomness or RandomnessSpec()
    _check_against_inner(inner, wiring)
    if inner.alice_outputs and check_nonsignalling(inner).b_to_a:
        raise PreconditionError("inner box signals from Bob to Alice")
    for spec in wiring.shared + wiring.alice_random + wiring.bob_random:
        randomness.distribution(spec)

    alice_out_names = [s.name for s in inner.alice_outputs]
    bob_out_names = [s.name for s in inner.bob_outputs]
    n_alice_out = len(inner.alice_outputs)
    any_bob_key = next(assignments(inner.bob_inputs))
    protocol_alice = [s.name for s in wiring.alice_outputs]
    protocol_bob = [s.name for s in wiring.bob_outputs]

    def alice_marginal(alice_key: Assignment) -> dict[Assignment, Fraction]:
        marginal: dict[Assignment, Fraction] = {}
        for out, p in inner.table[alice_key + any_bob_key].items():
            marginal[out[:n_alice_out]] = marginal.get(out[:n_alice_out], Fraction(0)) + p
        return marginal

    table: dict[Assignment, Row] = {}
    for key in assignments(wiring.alice_inputs + wiring.bob_inputs):
        inputs = dict(zip((s.name for s in wiring.alice_inputs + wiring.bob_inputs), key))
        alice_env = {s.name: inputs[s.name] for s in wiring.alice_inputs}
        bob_env = {s.name: inputs[s.name] for s in wiring.bob_inputs}
        row: Row = {}
        for w_shared, shared in randomness.outcomes(wiring.shared):
            for w_alice, alice_rand in randomness.outcomes(wiring.alice_random):
                env_a = run_gates(wiring.alice_pre, {**alice_env, **shared, **alice_rand})
                alice_key = _box_values(env_a, inner.alice_inputs)
                marginal = alice_marginal(alice_key)
                for a_out, p_a in marginal.items():
                    env_post = run_gates(
                        wiring.alice_post,
                        {**env_a, **{BOX_PREFIX + n: v for n, v in zip(alice_out_names, a_out)}},
                    )
                    env_msg = run_gates(wiring.message or (), env_post)
                    message = {MESSAGE: env_msg[MESSAGE]} if wiring.message is not None else {}
                    alice_result = tuple(env_msg[n] for n in protocol_alice)
                    for w_bob, bob_rand in randomness.outcomes(wiring.bob_random):
                        env_b = run_gates(wiring.bob_pre, {**bob_env, **shared, **bob_rand, **message})
                        bob_key = _box_values(env_b, inner.bob_inputs)
                        for out, p in inner.table[alice_key + bob_key].items():
                            if out[:n_alice_out] != a_out:
                                continue
                            env_final = run_gates(
                                wiring.bob_post,
                                {**env_b, **{BOX_PREFIX + n: v for n, v in zip(bob_out_names, out[n_alice_out:])}},
                            )
                            result = alice_result + tuple(env_final[n] for n in protocol_bob)
                            weight = w_shared * w_alice * w_bob * p
                            row[result] = row.get(result, Fraction(0)) + weight
        table[key] = row
    logger.debug("Composed %s with %s", wiring.name or "wiring", inner.signature())
    return BipartiteBox(
        wiring.alice_inputs, wiring.alice_outputs, wiring.bob_inputs, wiring.bob_outputs, table
    )


def identity_wiring(box: BipartiteBox) -> Wiring:
    """Wiring that passes every variable straight through."""
    return Wiring(
        alice_inputs=box.alice_inputs,
        alice_outputs=box.alice_outputs,
        bob_inputs=box.bob_inputs,
        bob_outputs=box.bob_outputs,
        alice_pre=tuple(copy(BOX_PREFIX + s.name, s.name) for s in box.alice_inputs),
        alice_post=tuple(copy(s.name, BOX_PREFIX + s.name) for s in box.alice_outputs),
        bob_pre=tuple(copy(BOX_PREFIX + s.name, s.name) for s in box.bob_inputs),
        bob_post=tuple(copy(s.name, BOX_PREFIX + s.name) for s in box.bob_outputs),
        name="identity",
    )


@dataclass(frozen=True)
class WiredBox:
    """An inner box, a wiring around it and the randomness feeding the wiring.

    `input_distributions` fixes how protocol inputs are drawn when the wired
    box is viewed as a joint or as a channel; missing inputs are uniform.
    """

    inner: BipartiteBox
    wiring: Wiring
    randomness: RandomnessSpec = field(default_factory=RandomnessSpec)
    input_distributions: Mapping[str, tuple[Fraction, ...]] = field(default_factory=dict)
    channel_input: str = "z"
    channel_outputs: tuple[str, ...] = ("b_tilde",)
    channel_flags: tuple[str, ...] = ("y",)

    @cached_property
    def _effective(self) -> BipartiteBox:
        return compose(self.inner, self.wiring, self.randomness)

    def effective_box(self) -> BipartiteBox:
        """The composed box over protocol variables."""
        return self._effective

    def distribution(self, name: str) -> tuple[Fraction, ...]:
        dist = self.input_distributions.get(name)
        return tuple(to_fraction(p) for p in dist) if dist is not None else uniform(2)

    def joint(self) -> JointDistribution:
        """Exact joint of protocol inputs and outputs."""
        box = self.effective_box()
        return joint_from_box(box, {n: self.distribution(n) for n in box.input_names})

    def pr_box(self) -> BipartiteBox:
        """The effective box with the channel input averaged and channel outputs dropped."""
        box = self.effective_box()
        if self.channel_input in box.input_names:
            box = box.average_inputs({self.channel_input: self.distribution(self.channel_input)})
        dropped = [n for n in self.channel_outputs if n in box.output_names]
        return box.marginalize_outputs(dropped) if dropped else box

    def channel(self) -> ClassicalChannel:
        """Channel from the channel input to Bob's channel outputs and flags."""
        return channel_from_joint(self.joint(), self.channel_input, self.channel_outputs, self.channel_flags)
