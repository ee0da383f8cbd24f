"""Exhaustive enumeration of deterministic strategies."""

import itertools
import math
from typing import Iterator, Mapping

from core.errors import PreconditionError

from .models import COMPONENTS, IDENTITY_OUTPUT, MAP_SIZES, DeterministicStrategy, table_index

IDENTITY_OUTPUT_INDEX = table_index(IDENTITY_OUTPUT)


def component_ranges(
    general_alice_output: bool = False, fixed: Mapping[str, int] | None = None
) -> dict[str, range]:
    """Index range of every map, with pinned components reduced to one value."""
    fixed = dict(fixed or {})
    unknown = set(fixed) - set(COMPONENTS)
    if unknown:
        raise PreconditionError("unknown strategy components", components=sorted(unknown))
    ranges = {name: range(MAP_SIZES[name]) for name in COMPONENTS}
    if not general_alice_output:
        ranges["alice_output"] = range(IDENTITY_OUTPUT_INDEX, IDENTITY_OUTPUT_INDEX + 1)
    for name, value in fixed.items():
        if value not in ranges[name]:
            raise PreconditionError("pinned index outside the component range", component=name, value=value)
        ranges[name] = range(value, value + 1)
    return ranges


def strategy_space_size(general_alice_output: bool = False, fixed: Mapping[str, int] | None = None) -> int:
    """Number of strategies `enumerate_strategies` yields for the same arguments."""
    return math.prod(len(r) for r in component_ranges(general_alice_output, fixed).values())


def enumerate_strategies(
    general_alice_output: bool = False, fixed: Mapping[str, int] | None = None
) -> Iterator[DeterministicStrategy]:
    """Yield every deterministic strategy exactly once.

    With `general_alice_output` Alice's output ranges over all maps
    (x, z, a~) -> a; otherwise a = a~. `fixed` pins components by index.
    """
    ranges = component_ranges(general_alice_output, fixed)
    for indices in itertools.product(*(ranges[name] for name in COMPONENTS)):
        yield DeterministicStrategy.from_indices(indices)
