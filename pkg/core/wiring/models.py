"""Wiring data model: staged gate lists around one inner box."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from core.boxes.models import VariableSpec, assignments
from core.errors import BudgetViolationError, PreconditionError, SignatureError, VisibilityError
from core.rational import is_distribution, to_fraction, uniform

from .gates import BOX_PREFIX, Gate

MESSAGE = "m"


class Stage(str, Enum):
    """Wiring stages in evaluation order."""

    ALICE_PRE = "alice pre"
    ALICE_POST = "alice post"
    MESSAGE = "message"
    BOB_PRE = "bob pre"
    BOB_POST = "bob post"

    @property
    def party(self) -> str:
        return "bob" if self in (Stage.BOB_PRE, Stage.BOB_POST) else "alice"


@dataclass(frozen=True)
class RandomnessSpec:
    """Distributions of shared and local random variables; undeclared ones are uniform."""

    distributions: Mapping[str, tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {name: tuple(to_fraction(p) for p in dist) for name, dist in self.distributions.items()}
        for name, dist in cleaned.items():
            if not is_distribution(dist):
                raise PreconditionError("randomness distribution must be normalized", name=name)
        object.__setattr__(self, "distributions", cleaned)

    def distribution(self, spec: VariableSpec) -> tuple[Fraction, ...]:
        """Distribution of one random variable."""
        dist = self.distributions.get(spec.name)
        if dist is None:
            return uniform(spec.arity)
        if len(dist) != spec.arity:
            raise SignatureError("distribution length differs from arity", name=spec.name)
        return dist

    def outcomes(self, specs: Sequence[VariableSpec]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        """Weighted joint assignments of independent random variables."""
        dists = [self.distribution(s) for s in specs]
        for key in assignments(specs):
            weight = Fraction(1)
            for dist, value in zip(dists, key):
                weight *= dist[value]
            if weight:
                yield weight, dict(zip((s.name for s in specs), key))


@dataclass(frozen=True)
class Wiring:
    """Classical pre- and post-processing of one inner box.

    Stages run in the order of `Stage`. Gates address inner-box variables as
    `box.<name>`; any other unassigned target is a stage temporary that stays
    visible to the same party. Alice's stages see her inputs, the shared
    variables and her local randomness. Bob's stages see his own and, when a
    message stage exists, the bit `m` it assigns.
    """

    alice_inputs: tuple[VariableSpec, ...]
    alice_outputs: tuple[VariableSpec, ...]
    bob_inputs: tuple[VariableSpec, ...]
    bob_outputs: tuple[VariableSpec, ...]
    alice_pre: tuple[Gate, ...] = ()
    alice_post: tuple[Gate, ...] = ()
    message: tuple[Gate, ...] | None = None
    bob_pre: tuple[Gate, ...] = ()
    bob_post: tuple[Gate, ...] = ()
    shared: tuple[VariableSpec, ...] = ()
    alice_random: tuple[VariableSpec, ...] = ()
    bob_random: tuple[VariableSpec, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        for attr in (
            "alice_inputs", "alice_outputs", "bob_inputs", "bob_outputs",
            "alice_pre", "alice_post", "bob_pre", "bob_post",
            "shared", "alice_random", "bob_random",
        ):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if self.message is not None:
            object.__setattr__(self, "message", tuple(self.message))
        self._validate()

    def stages(self) -> Iterator[tuple[Stage, tuple[Gate, ...]]]:
        """(stage, gates) in evaluation order; the message stage only when present."""
        yield Stage.ALICE_PRE, self.alice_pre
        yield Stage.ALICE_POST, self.alice_post
        if self.message is not None:
            yield Stage.MESSAGE, self.message
        yield Stage.BOB_PRE, self.bob_pre
        yield Stage.BOB_POST, self.bob_post

    @property
    def declared(self) -> tuple[VariableSpec, ...]:
        return (
            self.alice_inputs + self.alice_outputs + self.bob_inputs + self.bob_outputs
            + self.shared + self.alice_random + self.bob_random
        )

    def _validate(self) -> None:
        names = [s.name for s in self.declared]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise SignatureError("wiring variable names must be unique", duplicates=duplicates)
        if MESSAGE in names:
            raise SignatureError("'m' is reserved for the message bit")

        fixed = {s.name for s in self.alice_inputs + self.bob_inputs + self.shared + self.alice_random + self.bob_random}
        alice_only = {s.name for s in self.alice_inputs + self.alice_outputs + self.alice_random}
        bob_only = {s.name for s in self.bob_inputs + self.bob_outputs + self.bob_random}
        alice_temps = {t for _, gates in self._party_stages("alice") for g in gates for t in g.targets}
        bob_temps = {t for _, gates in self._party_stages("bob") for g in gates for t in g.targets}

        visible = {
            "alice": {s.name for s in self.alice_inputs + self.shared + self.alice_random},
            "bob": {s.name for s in self.bob_inputs + self.shared + self.bob_random},
        }
        for stage, gates in self.stages():
            party = stage.party
            other_only = bob_only | (bob_temps - alice_temps) if party == "alice" else alice_only | (alice_temps - bob_temps)
            defined = visible[party]
            for gate in gates:
                for name in gate.reads():
                    if name == MESSAGE and party == "bob":
                        if self.message is None:
                            raise BudgetViolationError("Bob reads m but the wiring has no message", stage=stage.value)
                        continue
                    if name.startswith(BOX_PREFIX) and stage in (Stage.ALICE_POST, Stage.MESSAGE, Stage.BOB_POST):
                        continue
                    if name in defined:
                        continue
                    if name in other_only:
                        raise VisibilityError(f"{party} cannot read {name}", stage=stage.value)
                    raise SignatureError("gate reads an undefined variable", name=name, stage=stage.value)
                for target in gate.targets:
                    self._check_target(stage, target, fixed)
                    defined.add(target)

        for party, outputs in (("alice", self.alice_outputs), ("bob", self.bob_outputs)):
            missing = [s.name for s in outputs if s.name not in visible[party]]
            if missing:
                raise SignatureError(f"{party} outputs are never assigned", missing=missing)
        if self.message is not None and MESSAGE not in visible["alice"]:
            raise SignatureError("message stage must assign m")

    def _party_stages(self, party: str) -> Iterator[tuple[Stage, tuple[Gate, ...]]]:
        return ((s, g) for s, g in self.stages() if s.party == party)

    def _check_target(self, stage: Stage, target: str, fixed: set[str]) -> None:
        if target in fixed:
            raise SignatureError("gates cannot assign inputs or random variables", name=target)
        if target.startswith(BOX_PREFIX) and stage not in (Stage.ALICE_PRE, Stage.BOB_PRE):
            raise SignatureError("box inputs are assigned only in pre stages", name=target, stage=stage.value)
        if target == MESSAGE and stage is not Stage.MESSAGE:
            raise SignatureError("only the message stage assigns m", stage=stage.value)
        outputs = {s.name for s in self.alice_outputs} if stage.party == "alice" else {s.name for s in self.bob_outputs}
        all_outputs = {s.name for s in self.alice_outputs + self.bob_outputs}
        if target in all_outputs and (target not in outputs or stage not in (Stage.ALICE_POST, Stage.BOB_POST)):
            raise SignatureError("outputs are assigned only in their party's post stage", name=target)

    def box_references(self, party: str) -> set[str]:
        """Inner-box variable names a party's stages read or assign."""
        refs: set[str] = set()
        for _, gates in self._party_stages(party):
            for gate in gates:
                for name in gate.reads() + gate.targets:
                    if name.startswith(BOX_PREFIX):
                        refs.add(name[len(BOX_PREFIX):])
        return refs

    def box_assignments(self, party: str) -> set[str]:
        """Inner-box variables assigned in a party's pre stage."""
        gates = self.alice_pre if party == "alice" else self.bob_pre
        return {t[len(BOX_PREFIX):] for g in gates for t in g.targets if t.startswith(BOX_PREFIX)}
