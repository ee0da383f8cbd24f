"""Exact rational helpers shared by tables, channels and reports."""

from fractions import Fraction
from typing import Iterable

Probability = Fraction


def to_fraction(value: Fraction | int | str | float) -> Fraction:
    """Coerce a probability-like value to an exact Fraction.

    Floats are accepted only when they are dyadic-exact (e.g. 0.25); use
    "num/den" strings for anything else.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        exact = Fraction(value)
        if exact.limit_denominator(1 << 20) != exact:
            raise ValueError(f"float {value!r} is not an exact short fraction")
        return exact
    raise TypeError(f"cannot interpret {value!r} as a probability")


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as "num/den" (integers keep a "/1" suffix)."""
    return f"{value.numerator}/{value.denominator}"


def uniform(arity: int = 2) -> tuple[Fraction, ...]:
    """Uniform distribution over `arity` values."""
    return tuple(Fraction(1, arity) for _ in range(arity))


def bernoulli(p_one: Fraction) -> tuple[Fraction, Fraction]:
    """Distribution of a bit that is 1 with probability `p_one`."""
    p_one = to_fraction(p_one)
    if not 0 <= p_one <= 1:
        raise ValueError(f"probability {p_one} outside [0, 1]")
    return (1 - p_one, p_one)


def is_distribution(weights: Iterable[Fraction]) -> bool:
    """True iff the weights are nonnegative and sum to exactly one."""
    values = list(weights)
    return all(w >= 0 for w in values) and sum(values, Fraction(0)) == 1
