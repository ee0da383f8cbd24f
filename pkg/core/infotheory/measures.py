"""Shannon quantities in bits over joint distributions.

Probability algebra stays exact until the logarithm; every function accepts
batched joints and then returns one value per batch element.
"""

from fractions import Fraction
from typing import Sequence

import numpy as np

from core.errors import PreconditionError

from .distribution import JointDistribution


def _names(names: Sequence[str] | str) -> tuple[str, ...]:
    return (names,) if isinstance(names, str) else tuple(names)


def _check_disjoint(d: JointDistribution, *groups: tuple[str, ...]) -> None:
    seen: set[str] = set()
    for group in groups:
        d.require(*group)
        overlap = seen.intersection(group)
        if overlap:
            raise PreconditionError("variable sets must be disjoint", overlap=sorted(overlap))
        seen.update(group)


def _finish(value: np.ndarray) -> float | np.ndarray:
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def joint_entropy(d: JointDistribution, names: Sequence[str] | str) -> float | np.ndarray:
    """H(names) in bits, with 0 log 0 = 0."""
    names = _names(names)
    if not names:
        return _finish(np.zeros(d.batch_shape))
    p = d.marginal(names).probabilities()
    logs = np.log2(p, out=np.zeros_like(p), where=p > 0)
    axes = tuple(range(d.batch_ndim, p.ndim))
    return _finish(-(p * logs).sum(axis=axes))


def entropy(
    d: JointDistribution, names: Sequence[str] | str, given: Sequence[str] | str = ()
) -> float | np.ndarray:
    """Conditional entropy H(names | given) in bits."""
    names, given = _names(names), _names(given)
    _check_disjoint(d, names, given)
    return _finish(np.asarray(joint_entropy(d, names + given)) - np.asarray(joint_entropy(d, given)))


def mutual_information(
    d: JointDistribution,
    first: Sequence[str] | str,
    second: Sequence[str] | str,
    given: Sequence[str] | str = (),
) -> float | np.ndarray:
    """I(first : second | given) in bits."""
    first, second, given = _names(first), _names(second), _names(given)
    _check_disjoint(d, first, second, given)
    return _finish(
        np.asarray(entropy(d, first, given))
        + np.asarray(entropy(d, second, given))
        - np.asarray(entropy(d, first + second, given))
    )


def tripartite_information(
    d: JointDistribution,
    first: Sequence[str] | str,
    second: Sequence[str] | str,
    third: Sequence[str] | str,
    given: Sequence[str] | str = (),
) -> float | np.ndarray:
    """H(S|V) + H(T|V) + H(U|V) - H(STU|V)."""
    first, second, third, given = _names(first), _names(second), _names(third), _names(given)
    _check_disjoint(d, first, second, third, given)
    return _finish(
        np.asarray(entropy(d, first, given))
        + np.asarray(entropy(d, second, given))
        + np.asarray(entropy(d, third, given))
        - np.asarray(entropy(d, first + second + third, given))
    )


def guessed_information(
    d: JointDistribution, observed: Sequence[str] | str, target: Sequence[str] | str
) -> Fraction | float | np.ndarray:
    """Probability of guessing `target` from `observed` with the best rule.

    Equals the sum over observed values of the largest joint weight; exact
    for unbatched exact joints.
    """
    observed, target = _names(observed), _names(target)
    _check_disjoint(d, observed, target)
    marginal = d.marginal(observed + target)
    n_observed = int(np.prod([d.arity(n) for n in observed], dtype=int))
    n_target = int(np.prod([d.arity(n) for n in target], dtype=int))
    if marginal.exact and not d.batch_ndim:
        p = marginal.exact_probabilities().reshape(n_observed, n_target)
        return sum((max(row) for row in p), Fraction(0))
    p = marginal.probabilities().reshape(d.batch_shape + (n_observed, n_target))
    return _finish(p.max(axis=-1).sum(axis=-1))
