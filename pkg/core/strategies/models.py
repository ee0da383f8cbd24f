"""Deterministic and mixed strategies for the racbox plus one c-bit scenario.

Table layouts (all entries bits):

    alice_encode    4 pairs (x0~, x1~)   index 2x + z
    message_choice  8 bits m             index 4x + 2z + a~
    alice_output    8 bits a             index 4x + 2z + a~
    bob_input       2 bits y~            index y
    bob_yprime      4 bits y'~           index 2y + m
    bob_decode     16 bits b             index 8y + 4y~ + 2b~ + m
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from core.boxes.models import VariableSpec, bits
from core.errors import PreconditionError, SignatureError
from core.rational import is_distribution, to_fraction
from core.wiring.gates import Gate, copy, lut, mux
from core.wiring.models import RandomnessSpec, Wiring

IDENTITY_OUTPUT = (0, 1, 0, 1, 0, 1, 0, 1)

COMPONENTS = ("alice_encode", "message_choice", "alice_output", "bob_input", "bob_yprime", "bob_decode")
MAP_SIZES = {
    "alice_encode": 256,
    "message_choice": 256,
    "alice_output": 256,
    "bob_input": 4,
    "bob_yprime": 16,
    "bob_decode": 65536,
}


def table_bits(index: int, length: int) -> tuple[int, ...]:
    """Bit i of the table is bit i of the index."""
    return tuple((index >> i) & 1 for i in range(length))


def table_index(table: Sequence[int]) -> int:
    return sum(bit << i for i, bit in enumerate(table))


def encode_pairs(index: int) -> tuple[tuple[int, int], ...]:
    """Encoding map from its index: entry i takes two bits, x0~ high."""
    return tuple((((index >> (2 * i)) >> 1) & 1, (index >> (2 * i)) & 1) for i in range(4))


def encode_index(pairs: Sequence[tuple[int, int]]) -> int:
    return sum(((x0 << 1) | x1) << (2 * i) for i, (x0, x1) in enumerate(pairs))


def _check_bits(name: str, table: Sequence[int], length: int) -> None:
    if len(table) != length or any(v not in (0, 1) for v in table):
        raise SignatureError(f"{name} must be {length} bits", table=tuple(table))


@dataclass(frozen=True)
class DeterministicStrategy:
    """One deterministic choice of every map Alice and Bob apply."""

    alice_encode: tuple[tuple[int, int], ...]
    message_choice: tuple[int, ...]
    bob_input: tuple[int, ...]
    bob_yprime: tuple[int, ...]
    bob_decode: tuple[int, ...]
    alice_output: tuple[int, ...] = IDENTITY_OUTPUT

    def __post_init__(self) -> None:
        object.__setattr__(self, "alice_encode", tuple(tuple(p) for p in self.alice_encode))
        for name in ("message_choice", "bob_input", "bob_yprime", "bob_decode", "alice_output"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.alice_encode) != 4 or any(len(p) != 2 or any(v not in (0, 1) for v in p) for p in self.alice_encode):
            raise SignatureError("alice_encode must be 4 pairs of bits", alice_encode=self.alice_encode)
        _check_bits("message_choice", self.message_choice, 8)
        _check_bits("alice_output", self.alice_output, 8)
        _check_bits("bob_input", self.bob_input, 2)
        _check_bits("bob_yprime", self.bob_yprime, 4)
        _check_bits("bob_decode", self.bob_decode, 16)

    @classmethod
    def from_rules(
        cls,
        encode: Callable[[int, int], tuple[int, int]],
        message: Callable[[int, int, int], int],
        bob_input: Callable[[int], int],
        bob_yprime: Callable[[int, int], int],
        bob_decode: Callable[[int, int, int, int], int],
        alice_output: Callable[[int, int, int], int] | None = None,
    ) -> "DeterministicStrategy":
        """Tabulate strategy maps given as functions."""
        alice_output = alice_output or (lambda x, z, at: at)
        return cls(
            alice_encode=tuple(encode(i >> 1, i & 1) for i in range(4)),
            message_choice=tuple(message(i >> 2, (i >> 1) & 1, i & 1) for i in range(8)),
            bob_input=tuple(bob_input(y) for y in range(2)),
            bob_yprime=tuple(bob_yprime(i >> 1, i & 1) for i in range(4)),
            bob_decode=tuple(bob_decode(i >> 3, (i >> 2) & 1, (i >> 1) & 1, i & 1) for i in range(16)),
            alice_output=tuple(alice_output(i >> 2, (i >> 1) & 1, i & 1) for i in range(8)),
        )

    @classmethod
    def from_indices(cls, indices: Sequence[int]) -> "DeterministicStrategy":
        """Inverse of `indices`."""
        e, msg, aout, g, h, d = indices
        return cls(
            alice_encode=encode_pairs(e),
            message_choice=table_bits(msg, 8),
            alice_output=table_bits(aout, 8),
            bob_input=table_bits(g, 2),
            bob_yprime=table_bits(h, 4),
            bob_decode=table_bits(d, 16),
        )

    def indices(self) -> tuple[int, int, int, int, int, int]:
        """Canonical integer encoding, one index per map in COMPONENTS order."""
        return (
            encode_index(self.alice_encode),
            table_index(self.message_choice),
            table_index(self.alice_output),
            table_index(self.bob_input),
            table_index(self.bob_yprime),
            table_index(self.bob_decode),
        )

    def encoded(self, x: int, z: int) -> tuple[int, int]:
        return self.alice_encode[2 * x + z]

    def message_bit(self, x: int, z: int, a_tilde: int) -> int:
        return self.message_choice[4 * x + 2 * z + a_tilde]

    def output(self, x: int, z: int, a_tilde: int) -> int:
        return self.alice_output[4 * x + 2 * z + a_tilde]

    def y_tilde(self, y: int) -> int:
        return self.bob_input[y]

    def y_prime(self, y: int, m: int) -> int:
        return self.bob_yprime[2 * y + m]

    def decode(self, y: int, y_tilde: int, b_tilde: int, m: int) -> int:
        return self.bob_decode[8 * y + 4 * y_tilde + 2 * b_tilde + m]

    def is_routed(self) -> bool:
        """True iff Bob's y'~ equals a~ for every input and box output."""
        return all(
            self.y_prime(y, self.message_bit(x, z, at)) == at
            for y in (0, 1)
            for x in (0, 1)
            for z in (0, 1)
            for at in (0, 1)
        )

    def branch(self) -> str:
        """Branch tag: routed/constant_input, routed/varying_input or unrouted."""
        if not self.is_routed():
            return "unrouted"
        return "routed/constant_input" if self.bob_input[0] == self.bob_input[1] else "routed/varying_input"

    def describe(self) -> dict[str, Any]:
        """Report-friendly view of the tables."""
        return {
            "alice_encode": ["".join(map(str, p)) for p in self.alice_encode],
            "message_choice": "".join(map(str, self.message_choice)),
            "alice_output": "".join(map(str, self.alice_output)),
            "bob_input": "".join(map(str, self.bob_input)),
            "bob_yprime": "".join(map(str, self.bob_yprime)),
            "bob_decode": "".join(map(str, self.bob_decode)),
        }

    def _gates(self, suffix: str = "") -> dict[str, tuple[Gate, ...]]:
        """Gates per stage computing this strategy's values into suffixed temporaries."""
        x0_table = tuple(self.alice_encode[i][0] for i in range(4))
        x1_table = tuple(self.alice_encode[i][1] for i in range(4))
        return {
            "alice_pre": (lut(f"x0t{suffix}", x0_table, "x", "z"), lut(f"x1t{suffix}", x1_table, "x", "z")),
            "alice_post": (lut(f"at{suffix}", self.alice_output, "x", "z", "box.a"),),
            "message": (lut(f"mt{suffix}", self.message_choice, "x", "z", "box.a"),),
            "bob_pre": (lut(f"yt{suffix}", self.bob_input, "y"), lut(f"ypt{suffix}", self.bob_yprime, "y", "m")),
            "bob_post": (lut(f"bt{suffix}", self.bob_decode, "y", "box.y", "box.b", "m"),),
        }

    def to_wiring(self) -> Wiring:
        """The strategy as a wiring around a racbox."""
        return MixedStrategy((self,), (Fraction(1),)).to_wiring()


@dataclass(frozen=True)
class MixedStrategy:
    """Deterministic strategies selected by a shared variable s with the given weights."""

    components: tuple[DeterministicStrategy, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "weights", tuple(to_fraction(w) for w in self.weights))
        if not self.components or len(self.components) != len(self.weights):
            raise PreconditionError("mixture needs one weight per component")
        if not is_distribution(self.weights):
            raise PreconditionError("mixture weights must form a distribution")

    @property
    def arity(self) -> int:
        """Arity of the selector; a single component is padded with a zero-weight copy."""
        return max(2, len(self.components))

    def padded(self) -> tuple[tuple[DeterministicStrategy, ...], tuple[Fraction, ...]]:
        if len(self.components) > 1:
            return self.components, self.weights
        return self.components * 2, self.weights + (Fraction(0),)

    def to_wiring(self) -> Wiring:
        """Wiring with per-component lookup tables and a shared selector s.

        Protocol outputs: Alice a and a_tilde; Bob b, b_tilde, y_tilde,
        y_prime_tilde and msg (a copy of the message bit).
        """
        components, _ = self.padded()
        stages: dict[str, list[Gate]] = {k: [] for k in ("alice_pre", "alice_post", "message", "bob_pre", "bob_post")}
        for i, strategy in enumerate(components):
            for stage, gates in strategy._gates(f"_{i}").items():
                stages[stage].extend(gates)

        def select(target: str, prefix: str) -> Gate:
            return mux(target, "s", *(f"{prefix}_{i}" for i in range(len(components))))

        stages["alice_pre"] += [select("box.x0", "x0t"), select("box.x1", "x1t")]
        stages["alice_post"] += [select("a", "at"), copy("a_tilde", "box.a")]
        stages["message"] += [select("m", "mt")]
        stages["bob_pre"] += [select("box.y", "yt"), select("box.y_prime", "ypt")]
        stages["bob_post"] += [
            select("b", "bt"),
            copy("b_tilde", "box.b"),
            copy("y_tilde", "box.y"),
            copy("y_prime_tilde", "box.y_prime"),
            copy("msg", "m"),
        ]
        return Wiring(
            alice_inputs=bits("x", "z"),
            alice_outputs=bits("a", "a_tilde"),
            bob_inputs=bits("y"),
            bob_outputs=bits("b", "b_tilde", "y_tilde", "y_prime_tilde", "msg"),
            alice_pre=tuple(stages["alice_pre"]),
            alice_post=tuple(stages["alice_post"]),
            message=tuple(stages["message"]),
            bob_pre=tuple(stages["bob_pre"]),
            bob_post=tuple(stages["bob_post"]),
            shared=(VariableSpec("s", self.arity),),
            name="mixed-strategy",
        )

    def randomness(self) -> RandomnessSpec:
        """Distribution of the selector s."""
        _, weights = self.padded()
        return RandomnessSpec({"s": weights})
