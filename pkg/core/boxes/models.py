"""Bipartite box data model: named variables and exact conditional tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from core.errors import BoxValidationError, SignatureError
from core.rational import to_fraction

Assignment = tuple[int, ...]
Row = dict[Assignment, Fraction]
Event = Callable[[Mapping[str, int]], bool]


@dataclass(frozen=True)
class VariableSpec:
    """A named finite variable slot on a box."""

    name: str
    arity: int = 2

    def __post_init__(self) -> None:
        if not self.name.isidentifier():
            raise SignatureError("variable name must be an identifier", name=self.name)
        if self.arity < 2:
            raise SignatureError("variable arity must be at least 2", name=self.name, arity=self.arity)

    def values(self) -> range:
        """All values the variable can take."""
        return range(self.arity)


def bits(*names: str) -> tuple[VariableSpec, ...]:
    """Binary variable specs for the given names."""
    return tuple(VariableSpec(name) for name in names)


def assignments(specs: Sequence[VariableSpec]) -> Iterator[Assignment]:
    """Cartesian product of the value ranges, in signature order."""
    return itertools.product(*(spec.values() for spec in specs))


@dataclass(frozen=True)
class BipartiteBox:
    """Exact conditional distribution p(outputs | inputs) between Alice and Bob.

    Table keys are full input assignments (Alice inputs then Bob inputs);
    each row maps full output assignments (Alice outputs then Bob outputs)
    to probabilities. Zero entries are dropped on construction, so two boxes
    with the same signature compare equal iff their tables are identical.
    """

    alice_inputs: tuple[VariableSpec, ...]
    alice_outputs: tuple[VariableSpec, ...]
    bob_inputs: tuple[VariableSpec, ...]
    bob_outputs: tuple[VariableSpec, ...]
    table: Mapping[Assignment, Row] = field(repr=False)

    def __post_init__(self) -> None:
        for name in ("alice_inputs", "alice_outputs", "bob_inputs", "bob_outputs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        names = [spec.name for spec in self.input_specs + self.output_specs]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise SignatureError("variable names must be unique", duplicates=duplicates)

        cleaned: dict[Assignment, Row] = {}
        for key, row in self.table.items():
            cleaned_row = {
                tuple(out): to_fraction(p) for out, p in row.items() if to_fraction(p) != 0
            }
            cleaned[tuple(key)] = cleaned_row
        object.__setattr__(self, "table", cleaned)
        self.validate()

    @property
    def input_specs(self) -> tuple[VariableSpec, ...]:
        return self.alice_inputs + self.bob_inputs

    @property
    def output_specs(self) -> tuple[VariableSpec, ...]:
        return self.alice_outputs + self.bob_outputs

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(spec.name for spec in self.input_specs)

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(spec.name for spec in self.output_specs)

    def spec(self, name: str) -> VariableSpec:
        """Look up a variable spec by name."""
        for spec in self.input_specs + self.output_specs:
            if spec.name == name:
                return spec
        raise SignatureError("unknown variable", name=name)

    def signature(self) -> dict[str, tuple[str, ...]]:
        """Variable names per party and role."""
        return {
            "alice_inputs": tuple(s.name for s in self.alice_inputs),
            "alice_outputs": tuple(s.name for s in self.alice_outputs),
            "bob_inputs": tuple(s.name for s in self.bob_inputs),
            "bob_outputs": tuple(s.name for s in self.bob_outputs),
        }

    def validate(self) -> None:
        """Check table coverage, value ranges and exact normalization."""
        expected = set(assignments(self.input_specs))
        present = set(self.table)
        if expected != present:
            missing = sorted(expected - present)[:4]
            extra = sorted(present - expected)[:4]
            raise BoxValidationError("table does not cover the input space", missing=missing, extra=extra)
        arities = [spec.arity for spec in self.output_specs]
        for key, row in self.table.items():
            for out, p in row.items():
                if len(out) != len(arities) or any(not 0 <= v < k for v, k in zip(out, arities)):
                    raise BoxValidationError("output assignment out of range", inputs=key, outputs=out)
                if p < 0:
                    raise BoxValidationError("negative probability", inputs=key, outputs=out)
            total = sum(row.values(), Fraction(0))
            if total != 1:
                raise BoxValidationError("row is not normalized", inputs=key, total=str(total))

    @classmethod
    def from_rule(
        cls,
        alice_inputs: Sequence[VariableSpec],
        alice_outputs: Sequence[VariableSpec],
        bob_inputs: Sequence[VariableSpec],
        bob_outputs: Sequence[VariableSpec],
        rule: Callable[[dict[str, int]], Iterable[tuple[Fraction, Mapping[str, int]]]],
    ) -> "BipartiteBox":
        """Build a box from a rule yielding (probability, outputs) pairs per input assignment."""
        input_specs = tuple(alice_inputs) + tuple(bob_inputs)
        output_names = [s.name for s in tuple(alice_outputs) + tuple(bob_outputs)]
        table: dict[Assignment, Row] = {}
        for key in assignments(input_specs):
            inputs = dict(zip((s.name for s in input_specs), key))
            row: Row = {}
            for p, outputs in rule(inputs):
                out = tuple(outputs[name] for name in output_names)
                row[out] = row.get(out, Fraction(0)) + to_fraction(p)
            table[key] = row
        return cls(tuple(alice_inputs), tuple(alice_outputs), tuple(bob_inputs), tuple(bob_outputs), table)

    def _key(self, inputs: Mapping[str, int]) -> Assignment:
        try:
            return tuple(inputs[name] for name in self.input_names)
        except KeyError as exc:
            raise SignatureError("input assignment is missing a variable", missing=exc.args[0]) from exc

    def row(self, inputs: Mapping[str, int]) -> Row:
        """Output distribution for one full input assignment."""
        return self.table[self._key(inputs)]

    def outcomes(self, inputs: Mapping[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        """Yield (probability, outputs) pairs with positive probability."""
        for out, p in self.row(inputs).items():
            yield p, dict(zip(self.output_names, out))

    def rows(self) -> Iterator[tuple[dict[str, int], Row]]:
        """Iterate over (inputs, row) for every input assignment."""
        for key in assignments(self.input_specs):
            yield dict(zip(self.input_names, key)), self.table[key]

    def probability(self, event: Event, inputs: Mapping[str, int]) -> Fraction:
        """P(event | inputs); the event sees inputs and outputs by name."""
        total = Fraction(0)
        for p, outputs in self.outcomes(inputs):
            if event({**inputs, **outputs}):
                total += p
        return total

    def conditional(self, event: Event, given: Event, inputs: Mapping[str, int]) -> Fraction | None:
        """P(event | given, inputs), or None when the condition has zero probability."""
        denominator = self.probability(given, inputs)
        if denominator == 0:
            return None
        return self.probability(lambda v: event(v) and given(v), inputs) / denominator

    def marginal(self, names: Sequence[str], inputs: Mapping[str, int]) -> dict[Assignment, Fraction]:
        """Distribution of the named outputs for one input assignment."""
        result: dict[Assignment, Fraction] = {}
        for p, outputs in self.outcomes(inputs):
            key = tuple(outputs[n] for n in names)
            result[key] = result.get(key, Fraction(0)) + p
        return result

    def alice_marginal(self, inputs: Mapping[str, int]) -> dict[Assignment, Fraction]:
        """Distribution of Alice's outputs for one full input assignment."""
        return self.marginal([s.name for s in self.alice_outputs], inputs)

    def bob_marginal(self, inputs: Mapping[str, int]) -> dict[Assignment, Fraction]:
        """Distribution of Bob's outputs for one full input assignment."""
        return self.marginal([s.name for s in self.bob_outputs], inputs)

    def average_inputs(self, distributions: Mapping[str, Sequence[Fraction]]) -> "BipartiteBox":
        """Remove input variables by averaging rows over the given distributions."""
        for name, dist in distributions.items():
            if name not in self.input_names:
                raise SignatureError("cannot average an unknown input", name=name)
            if len(dist) != self.spec(name).arity:
                raise SignatureError("distribution length differs from arity", name=name)
        keep_alice = tuple(s for s in self.alice_inputs if s.name not in distributions)
        keep_bob = tuple(s for s in self.bob_inputs if s.name not in distributions)
        averaged = [self.spec(n) for n in distributions]

        def rule(inputs: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
            for values in assignments(averaged):
                weight = Fraction(1)
                for spec, v in zip(averaged, values):
                    weight *= to_fraction(distributions[spec.name][v])
                if weight == 0:
                    continue
                full = {**inputs, **{s.name: v for s, v in zip(averaged, values)}}
                for p, outputs in self.outcomes(full):
                    yield weight * p, outputs

        return BipartiteBox.from_rule(keep_alice, self.alice_outputs, keep_bob, self.bob_outputs, rule)

    def marginalize_outputs(self, names: Sequence[str]) -> "BipartiteBox":
        """Drop the named outputs by summing them out."""
        for name in names:
            if name not in self.output_names:
                raise SignatureError("cannot marginalize an unknown output", name=name)
        keep_alice = tuple(s for s in self.alice_outputs if s.name not in names)
        keep_bob = tuple(s for s in self.bob_outputs if s.name not in names)
        return BipartiteBox.from_rule(
            self.alice_inputs, keep_alice, self.bob_inputs, keep_bob, lambda inputs: self.outcomes(inputs)
        )

    def relabel(self, mapping: Mapping[str, str]) -> "BipartiteBox":
        """Rename variables; names missing from the mapping are kept."""

        def rename(specs: tuple[VariableSpec, ...]) -> tuple[VariableSpec, ...]:
            return tuple(VariableSpec(mapping.get(s.name, s.name), s.arity) for s in specs)

        return BipartiteBox(
            rename(self.alice_inputs),
            rename(self.alice_outputs),
            rename(self.bob_inputs),
            rename(self.bob_outputs),
            self.table,
        )


@dataclass(frozen=True)
class SignallingWitness:
    """Two sender input assignments that change the receiver's marginal."""

    direction: str
    receiver_inputs: dict[str, int]
    sender_inputs: tuple[dict[str, int], dict[str, int]]
    marginals: tuple[dict[Assignment, Fraction], dict[Assignment, Fraction]]


@dataclass(frozen=True)
class SignallingVerdict:
    """Result of a no-signalling check in both directions."""

    a_to_b: bool
    b_to_a: bool
    witness: SignallingWitness | None = None

    @property
    def nonsignalling(self) -> bool:
        return not (self.a_to_b or self.b_to_a)


def require_signature(
    box: BipartiteBox,
    alice_inputs: Iterable[str],
    alice_outputs: Iterable[str],
    bob_inputs: Iterable[str],
    bob_outputs: Iterable[str],
) -> None:
    """Raise SignatureError unless the box has exactly these binary variables per role."""
    expected = {
        "alice_inputs": set(alice_inputs),
        "alice_outputs": set(alice_outputs),
        "bob_inputs": set(bob_inputs),
        "bob_outputs": set(bob_outputs),
    }
    actual = {role: set(names) for role, names in box.signature().items()}
    if actual != expected:
        raise SignatureError(
            "box signature mismatch",
            expected={k: sorted(v) for k, v in expected.items()},
            actual={k: sorted(v) for k, v in actual.items()},
        )
    if any(spec.arity != 2 for spec in box.input_specs + box.output_specs):
        raise SignatureError("expected binary variables only")
