"""Classical channels from a binary input to Bob's view."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from core.errors import BoxValidationError, PreconditionError, SignatureError
from core.infotheory.distribution import JointDistribution
from core.infotheory.measures import mutual_information as _mutual_information
from core.rational import format_fraction, to_fraction, uniform

Symbol = tuple[int, ...]


class ChannelKind(str, Enum):
    """Channel shapes recognized by the classifier."""

    ERASURE = "erasure"
    AMPLITUDE_DAMPING = "amplitude_damping"
    DEPOLARIZING = "depolarizing"
    ZERO_CAPACITY = "zero_capacity"
    OTHER = "other"


@dataclass(frozen=True)
class ChannelClass:
    """A channel shape and its parameter, if it has one."""

    kind: ChannelKind
    parameter: Fraction | None = None

    def __str__(self) -> str:
        if self.parameter is None:
            return self.kind.value
        return f"{self.kind.value}({format_fraction(self.parameter)})"


@dataclass(frozen=True)
class ClassicalChannel:
    """Exact conditional distribution p(outputs | input) for a binary input.

    `table[v]` maps output symbols (tuples over `output_names`) to
    probabilities. Zero entries are dropped.
    """

    output_names: tuple[str, ...]
    table: Mapping[int, Mapping[Symbol, Fraction]] = field(repr=False)
    input_name: str = "z"

    def __post_init__(self) -> None:
        object.__setattr__(self, "output_names", tuple(self.output_names))
        cleaned = {
            int(v): {tuple(o): to_fraction(p) for o, p in row.items() if to_fraction(p) != 0}
            for v, row in self.table.items()
        }
        object.__setattr__(self, "table", cleaned)
        if set(cleaned) != {0, 1}:
            raise SignatureError("channel input must be binary", inputs=sorted(cleaned))
        for v, row in cleaned.items():
            if any(len(o) != len(self.output_names) for o in row):
                raise SignatureError("output symbol length differs from output names", input=v)
            if any(p < 0 for p in row.values()) or sum(row.values(), Fraction(0)) != 1:
                raise BoxValidationError("channel row is not a distribution", input=v)

    def symbols(self) -> list[Symbol]:
        """Output symbols with positive probability for some input, sorted."""
        return sorted(set(self.table[0]) | set(self.table[1]))

    def probability(self, value: int, symbol: Symbol) -> Fraction:
        return self.table[value].get(tuple(symbol), Fraction(0))

    def columns(self) -> list[tuple[Symbol, Fraction, Fraction]]:
        """(symbol, p(symbol|0), p(symbol|1)) for every symbol."""
        return [(o, self.probability(0, o), self.probability(1, o)) for o in self.symbols()]

    def canonical(self) -> "ClassicalChannel":
        """Merge symbols with proportional likelihoods; symbols are ordered by p(.|0) share.

        Two channels are equivalent up to relabeling and splitting of
        outputs iff their canonical forms are equal.
        """
        merged: dict[Fraction, list[Fraction]] = {}
        for _, p0, p1 in self.columns():
            share = p0 / (p0 + p1)
            masses = merged.setdefault(share, [Fraction(0), Fraction(0)])
            masses[0] += p0
            masses[1] += p1
        ordered = [merged[share] for share in sorted(merged, reverse=True)]
        table = {
            v: {(i,): masses[v] for i, masses in enumerate(ordered) if masses[v] != 0} for v in (0, 1)
        }
        return ClassicalChannel(("symbol",), table, self.input_name)

    def then(
        self, mapping: Mapping[Symbol, Mapping[Symbol, Fraction]], output_names: Sequence[str]
    ) -> "ClassicalChannel":
        """Apply a stochastic map to the outputs."""
        table: dict[int, dict[Symbol, Fraction]] = {}
        for v, row in self.table.items():
            out: dict[Symbol, Fraction] = {}
            for symbol, p in row.items():
                if symbol not in mapping:
                    raise PreconditionError("postprocessing map misses a symbol", symbol=symbol)
                for new, q in mapping[symbol].items():
                    out[tuple(new)] = out.get(tuple(new), Fraction(0)) + p * to_fraction(q)
            table[v] = out
        return ClassicalChannel(tuple(output_names), table, self.input_name)

    def to_joint(self, input_distribution: Sequence[Fraction] | None = None) -> JointDistribution:
        """Joint of input and outputs under the given input distribution."""
        prior = [to_fraction(p) for p in (input_distribution or uniform(2))]
        symbols = self.symbols()
        arities = [max(o[i] for o in symbols) + 1 if symbols else 1 for i in range(len(self.output_names))]
        rows = [((v,) + o, prior[v] * p) for v, row in self.table.items() for o, p in row.items()]
        return JointDistribution.from_rows((self.input_name,) + self.output_names, [2, *arities], rows)

    def mutual_information(self, input_distribution: Sequence[Fraction] | None = None) -> float:
        """I(input : outputs) in bits."""
        return float(_mutual_information(self.to_joint(input_distribution), self.input_name, self.output_names))


def erasure_channel(epsilon: Fraction) -> ClassicalChannel:
    """Delivers z with probability 1 - epsilon as (z, 0), otherwise the erased symbol (0, 1)."""
    epsilon = to_fraction(epsilon)
    if not 0 <= epsilon <= 1:
        raise PreconditionError("erasure probability outside [0, 1]", epsilon=str(epsilon))
    return ClassicalChannel(
        ("out", "flag"),
        {v: {(v, 0): 1 - epsilon, (0, 1): epsilon} for v in (0, 1)},
    )


def identity_channel() -> ClassicalChannel:
    """Noiseless binary channel."""
    return ClassicalChannel(("out",), {0: {(0,): Fraction(1)}, 1: {(1,): Fraction(1)}})


def channel_from_joint(
    joint: JointDistribution,
    input_name: str = "z",
    outputs: Sequence[str] = ("b_tilde",),
    flags: Sequence[str] = ("y",),
) -> ClassicalChannel:
    """Conditional p(outputs, flags | input) from an exact joint."""
    names = tuple(outputs) + tuple(flags)
    joint.require(input_name, *names)
    if joint.arity(input_name) != 2:
        raise SignatureError("channel input must be binary", name=input_name)
    table: dict[int, dict[Symbol, Fraction]] = {}
    for v in (0, 1):
        conditioned = joint.condition({input_name: v}).marginal(names)
        p = conditioned.exact_probabilities()
        table[v] = {
            tuple(int(i) for i in key): p[key] for key in np.ndindex(*conditioned.shape) if p[key] != 0
        }
    return ClassicalChannel(names, table, input_name)
