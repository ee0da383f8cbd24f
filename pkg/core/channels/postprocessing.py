"""Degradation of channels from the erasure channel."""

import logging
from fractions import Fraction
from typing import Literal

import numpy as np
from scipy.optimize import linprog

from core.errors import PreconditionError
from core.rational import to_fraction

from .models import ClassicalChannel, Symbol, erasure_channel

logger = logging.getLogger(__name__)

ERASED: Symbol = (0, 1)


def erasure_overlap(ch: ClassicalChannel) -> Fraction:
    """Sum over outputs of min(p(o|0), p(o|1))."""
    return sum((min(p0, p1) for _, p0, p1 in ch.columns()), Fraction(0))


def _solve_lp(ch: ClassicalChannel, epsilon: Fraction, tolerance: float) -> bool:
    """Feasibility of T >= 0, rows of T summing to 1, Erasure(epsilon) then T = ch."""
    symbols = ch.symbols()
    k = len(symbols)
    source = erasure_channel(epsilon)
    sources = [(0, 0), (1, 0), ERASED]
    # unknowns: T[s, o] flattened row-major, s over the three erasure symbols
    a_eq: list[np.ndarray] = []
    b_eq: list[float] = []
    for v in (0, 1):
        for j, o in enumerate(symbols):
            row = np.zeros(3 * k)
            for i, s in enumerate(sources):
                row[i * k + j] = float(source.probability(v, s))
            a_eq.append(row)
            b_eq.append(float(ch.probability(v, o)))
    for i in range(3):
        row = np.zeros(3 * k)
        row[i * k : (i + 1) * k] = 1.0
        a_eq.append(row)
        b_eq.append(1.0)
    a = np.array(a_eq)
    b = np.array(b_eq)
    result = linprog(np.zeros(3 * k), A_eq=a, b_eq=b, bounds=(0, None), method="highs")
    if not result.success:
        logger.debug("LP infeasible for epsilon=%s: %s", epsilon, result.message)
        return False
    residual = float(np.max(np.abs(a @ result.x - b)))
    return residual <= tolerance and float(result.x.min()) >= -tolerance


def is_postprocessing_of_erasure(
    ch: ClassicalChannel,
    epsilon: Fraction,
    method: Literal["lp", "exact"] = "lp",
    tolerance: float = 1e-9,
) -> bool:
    """True iff ch = T after Erasure(epsilon) for some stochastic map T.

    The exact method uses the closed criterion epsilon = 0 or
    erasure_overlap(ch) >= epsilon; the LP method solves for T with scipy.
    """
    epsilon = to_fraction(epsilon)
    if not 0 <= epsilon <= 1:
        raise PreconditionError("erasure probability outside [0, 1]", epsilon=str(epsilon))
    if method == "exact":
        return epsilon == 0 or erasure_overlap(ch) >= epsilon
    if method == "lp":
        return _solve_lp(ch, epsilon, tolerance)
    raise PreconditionError("unknown method", method=method)


def erasure_to_amplitude_damping(
    epsilon: Fraction = Fraction(1, 2), erased_outputs: tuple[int, int] = (0, 1)
) -> tuple[dict[Symbol, dict[Symbol, Fraction]], ClassicalChannel]:
    """Flag-relabeling map from Erasure(epsilon) and the channel it produces.

    A delivered symbol keeps its value and gets a fresh uniform flag; the
    erased symbol draws a fresh flag f and shows the value erased_outputs[f].
    Outputs are (value, flag).
    """
    half = Fraction(1, 2)
    mapping: dict[Symbol, dict[Symbol, Fraction]] = {
        (0, 0): {(0, 0): half, (0, 1): half},
        (1, 0): {(1, 0): half, (1, 1): half},
    }
    erased: dict[Symbol, Fraction] = {}
    for flag in (0, 1):
        symbol = (erased_outputs[flag], flag)
        erased[symbol] = erased.get(symbol, Fraction(0)) + half
    mapping[ERASED] = erased
    return mapping, erasure_channel(epsilon).then(mapping, ("out", "flag"))
