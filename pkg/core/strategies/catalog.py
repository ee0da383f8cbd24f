"""Named strategies used by the verification suites and tests."""

from fractions import Fraction
from typing import Sequence

import numpy as np

from core.errors import PreconditionError

from .models import COMPONENTS, MAP_SIZES, DeterministicStrategy, MixedStrategy


def fig3_strategy() -> DeterministicStrategy:
    """x0~ = z, x1~ = x, a~ sent and fed into y'~, b = m xor y b~.

    Perfect PR-correlations with z delivered through an erasure flagged by y.
    """
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (z, x),
        message=lambda x, z, at: at,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: m,
        bob_decode=lambda y, yt, bt, m: m ^ (y & bt),
    )


def _case_two() -> DeterministicStrategy:
    # x = 0 -> (0, 1), x = 1 -> (z, z); a = a~ xor xz
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (z, z) if x else (0, 1),
        message=lambda x, z, at: at,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: m,
        bob_decode=lambda y, yt, bt, m: m ^ bt ^ y,
        alice_output=lambda x, z, at: at ^ (x & z),
    )


def _case_three() -> DeterministicStrategy:
    # x0~ = x, x1~ = x or z: y = 0, x = 0 gives b~ = 0 and y = 1, x = 1 gives b~ = 1
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (x, x | z),
        message=lambda x, z, at: at,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: m,
        bob_decode=lambda y, yt, bt, m: m ^ ((1 - y) & bt),
        alice_output=lambda x, z, at: at ^ x,
    )


def table_case_strategy(case: int) -> DeterministicStrategy:
    """Representative perfect strategy of one row of the channel-pair table (1, 2 or 3)."""
    builders = {1: fig3_strategy, 2: _case_two, 3: _case_three}
    if case not in builders:
        raise PreconditionError("table case must be 1, 2 or 3", case=case)
    return builders[case]()


def depolarizing_strategy() -> DeterministicStrategy:
    """m carries x, y'~ = 0, a = 0 and b = xy; z leaks through a half-noisy b~."""
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (z, z),
        message=lambda x, z, at: x,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: 0,
        bob_decode=lambda y, yt, bt, m: y & m,
        alice_output=lambda x, z, at: 0,
    )


def ignore_box_strategy() -> DeterministicStrategy:
    """Constant box inputs and b = 0: success 1/2 and nothing about z reaches Bob."""
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (0, 0),
        message=lambda x, z, at: at,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: m,
        bob_decode=lambda y, yt, bt, m: 0,
    )


def imperfect_strategy() -> DeterministicStrategy:
    """Routed strategy that never learns x: b = a~, success 3/4."""
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (z, 0),
        message=lambda x, z, at: at,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: m,
        bob_decode=lambda y, yt, bt, m: m,
    )


def nonsignalling_transmission_strategy() -> DeterministicStrategy:
    """Uses a nonsignalling racbox as a PR-box and spends the message on z.

    On make_nonsignalling_racbox() this gives perfect PR-correlations and a
    noiseless z channel.
    """
    return DeterministicStrategy.from_rules(
        encode=lambda x, z: (0, x),
        message=lambda x, z, at: z,
        bob_input=lambda y: y,
        bob_yprime=lambda y, m: 0,
        bob_decode=lambda y, yt, bt, m: bt,
    )


def random_strategy(rng: np.random.Generator) -> DeterministicStrategy:
    return DeterministicStrategy.from_indices(tuple(int(rng.integers(MAP_SIZES[name])) for name in COMPONENTS))


def random_mixture(rng: np.random.Generator, components: Sequence[DeterministicStrategy]) -> MixedStrategy:
    """Random rational weights (1 to 10 parts each) over the given components."""
    raw = rng.integers(1, 11, size=len(components))
    total = int(raw.sum())
    return MixedStrategy(tuple(components), tuple(Fraction(int(w), total) for w in raw))
