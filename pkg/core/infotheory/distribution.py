"""Joint probability tables over named finite variables.

Weights are kept unnormalized in a numpy array, either as exact Fractions
(object dtype) or as integer counts. Optional leading batch axes hold many
joints over the same variables, and every operation here and in
`measures` acts on all of them at once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from core.boxes.models import BipartiteBox, assignments
from core.errors import PreconditionError, SignatureError
from core.rational import to_fraction

_to_fraction = np.frompyfunc(Fraction, 1, 1)


def as_fractions(weights: np.ndarray) -> np.ndarray:
    """Object array of Fractions with the same values."""
    source = weights if weights.dtype == object else weights.astype(np.int64).astype(object)
    if not source.size:
        return source
    return np.asarray(_to_fraction(source), dtype=object)


class JointDistribution:
    """Joint distribution over named variables, possibly batched."""

    def __init__(self, names: Sequence[str], weights: np.ndarray, batch_ndim: int = 0):
        weights = np.asarray(weights)
        self.names: tuple[str, ...] = tuple(names)
        self.weights = weights
        self.batch_ndim = batch_ndim
        if len(set(self.names)) != len(self.names):
            raise SignatureError("joint variable names must be unique", names=self.names)
        if weights.ndim != batch_ndim + len(self.names):
            raise SignatureError(
                "weight array rank does not match the variables", names=self.names, shape=weights.shape
            )
        if weights.size and (weights < 0).any():
            raise PreconditionError("joint weights must be nonnegative")

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        names: Sequence[str],
        arities: Sequence[int],
        rows: Iterable[tuple[Sequence[int], Fraction]],
    ) -> "JointDistribution":
        """Exact joint from (assignment, weight) pairs; repeated assignments add up."""
        weights = np.full(tuple(arities), Fraction(0), dtype=object)
        for key, p in rows:
            weights[tuple(key)] += to_fraction(p)
        return cls(names, weights)

    @property
    def shape(self) -> tuple[int, ...]:
        """Arities of the variables, in order."""
        return self.weights.shape[self.batch_ndim:]

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.weights.shape[: self.batch_ndim]

    @property
    def exact(self) -> bool:
        return self.weights.dtype == object or np.issubdtype(self.weights.dtype, np.integer)

    def arity(self, name: str) -> int:
        return self.shape[self.index(name)]

    def index(self, name: str) -> int:
        """Position of a variable among the names."""
        try:
            return self.names.index(name)
        except ValueError as exc:
            raise SignatureError("unknown variable", name=name, known=self.names) from exc

    def _var_axes(self) -> tuple[int, ...]:
        return tuple(range(self.batch_ndim, self.weights.ndim))

    def require(self, *names: str) -> None:
        """Raise SignatureError unless every name is a variable of the joint."""
        for name in names:
            self.index(name)

    # -- totals and probabilities ---------------------------------------

    def total(self) -> np.ndarray:
        """Total weight per batch element."""
        axes = self._var_axes()
        return self.weights.sum(axis=axes) if axes else self.weights

    def probabilities(self) -> np.ndarray:
        """Float probabilities; batch elements with zero mass map to zeros."""
        axes = self._var_axes()
        if self.weights.dtype == object:
            totals = self.total()
            if np.all(np.asarray(totals != 0)):
                return (self.weights / np.expand_dims(totals, axes) if axes else self.weights / totals).astype(float)
        w = self.weights.astype(float)
        t = w.sum(axis=axes, keepdims=True) if axes else w
        return np.divide(w, t, out=np.zeros_like(w), where=t > 0)

    def exact_probabilities(self) -> np.ndarray:
        """Fraction probabilities; requires exact weights and positive mass."""
        if not self.exact:
            raise PreconditionError("exact probabilities need integer or Fraction weights")
        w = as_fractions(self.weights)
        totals = w.sum(axis=self._var_axes()) if self.names else w
        if np.any(np.asarray(totals == 0)):
            raise PreconditionError("distribution has zero total mass")
        if not self.names:
            return w / totals
        return w / np.expand_dims(totals, self._var_axes())

    def exact_table(self) -> dict[tuple[int, ...], Fraction]:
        """Normalized nonzero entries of an unbatched exact joint."""
        if self.batch_ndim:
            raise PreconditionError("exact_table needs an unbatched joint")
        p = self.exact_probabilities()
        return {key: p[key] for key in np.ndindex(*self.shape) if p[key] != 0}

    def same_as(self, other: "JointDistribution") -> bool:
        """Exact equality of normalized tables after aligning variable order."""
        if set(self.names) != set(other.names):
            return False
        return self.exact_table() == other.marginal(self.names).exact_table()

    # -- transformations -------------------------------------------------

    def marginal(self, names: Sequence[str]) -> "JointDistribution":
        """Joint of the named variables, in the requested order."""
        names = tuple(names)
        keep = [self.index(n) for n in names]
        if len(set(keep)) != len(keep):
            raise SignatureError("repeated variable in marginal", names=names)
        drop = tuple(self.batch_ndim + i for i in range(len(self.names)) if i not in keep)
        w = self.weights.sum(axis=drop) if drop else self.weights
        remaining = [n for n in self.names if n in names]
        order = list(range(self.batch_ndim)) + [self.batch_ndim + remaining.index(n) for n in names]
        return JointDistribution(names, np.transpose(w, order), self.batch_ndim)

    def condition(self, values: Mapping[str, int]) -> "JointDistribution":
        """Restrict to an assignment of some variables; they leave the joint."""
        index: list[int | slice] = [slice(None)] * self.weights.ndim
        for name, value in values.items():
            axis = self.batch_ndim + self.index(name)
            if not 0 <= value < self.weights.shape[axis]:
                raise SignatureError("value outside the variable's range", name=name, value=value)
            index[axis] = value
        names = [n for n in self.names if n not in values]
        result = JointDistribution(names, self.weights[tuple(index)], self.batch_ndim)
        if not self.batch_ndim and result.total() == 0:
            raise PreconditionError("conditioning event has probability zero", given=dict(values))
        return result

    def derive(
        self, name: str, fn: Callable[..., np.ndarray | int], inputs: Sequence[str], arity: int = 2
    ) -> "JointDistribution":
        """Add a variable that is a deterministic function of existing ones."""
        if name in self.names:
            raise SignatureError("derived variable already exists", name=name)
        grids = np.indices(self.shape) if self.names else np.zeros((0,), dtype=int)
        values = np.broadcast_to(np.asarray(fn(*(grids[self.index(n)] for n in inputs))), self.shape)
        if values.size and (values.min() < 0 or values.max() >= arity):
            raise SignatureError("derived value outside its arity", name=name)
        onehot = values[..., None] == np.arange(arity)
        zero = Fraction(0) if self.weights.dtype == object else 0
        weights = np.where(onehot, self.weights[..., None], zero)
        return JointDistribution(self.names + (name,), weights, self.batch_ndim)

    def relabel(self, mapping: Mapping[str, str]) -> "JointDistribution":
        """Rename variables; unmapped names are kept."""
        return JointDistribution([mapping.get(n, n) for n in self.names], self.weights, self.batch_ndim)

    @classmethod
    def mixture(
        cls, label: str, components: Sequence["JointDistribution"], weights: Sequence[Fraction]
    ) -> "JointDistribution":
        """Convex combination with the component index kept as a new leading variable."""
        if not components or len(components) != len(weights):
            raise PreconditionError("mixture needs one weight per component")
        first = components[0]
        if any(c.names != first.names or c.batch_ndim != first.batch_ndim for c in components):
            raise SignatureError("mixture components must share variables")
        fractions = [to_fraction(w) for w in weights]
        if any(w < 0 for w in fractions) or sum(fractions, Fraction(0)) != 1:
            raise PreconditionError("mixture weights must form a distribution")
        stacked = np.stack(
            [c.exact_probabilities() * w for c, w in zip(components, fractions)], axis=first.batch_ndim
        )
        return cls((label,) + first.names, stacked, first.batch_ndim)

    def batch_item(self, index: int | tuple[int, ...]) -> "JointDistribution":
        """One element of a batched joint."""
        index = index if isinstance(index, tuple) else (index,)
        return JointDistribution(self.names, self.weights[index], self.batch_ndim - len(index))

    # -- queries -------------------------------------------------------

    def probability(self, predicate: Callable[..., np.ndarray], names: Sequence[str]) -> Fraction | np.ndarray:
        """P(predicate(names)); exact Fraction for an unbatched exact joint."""
        grids = np.indices(self.shape)
        mask = np.broadcast_to(np.asarray(predicate(*(grids[self.index(n)] for n in names)), dtype=bool), self.shape)
        if self.exact and not self.batch_ndim:
            p = self.exact_probabilities()
            return sum((p[key] for key in zip(*np.nonzero(mask))), Fraction(0))
        p = self.probabilities()
        return np.where(mask, p, 0.0).sum(axis=self._var_axes())

    def is_independent(self, groups: Sequence[Sequence[str]]) -> bool:
        """Exact check that the groups of variables are mutually independent."""
        if self.batch_ndim:
            raise PreconditionError("independence check needs an unbatched joint")
        flat = [n for g in groups for n in g]
        joint = self.marginal(flat).exact_probabilities()
        product = np.array(Fraction(1), dtype=object)
        for group in groups:
            product = np.multiply.outer(product, self.marginal(group).exact_probabilities())
        return bool(np.all(joint == product.reshape(joint.shape)))

    def __repr__(self) -> str:
        return f"JointDistribution(names={self.names}, shape={self.shape}, batch={self.batch_shape})"


def joint_from_box(
    box: BipartiteBox, input_distributions: Mapping[str, Sequence[Fraction]] | None = None
) -> JointDistribution:
    """Exact joint of a box's inputs and outputs; inputs default to uniform and independent."""
    input_distributions = input_distributions or {}
    for name in input_distributions:
        if name not in box.input_names:
            raise SignatureError("distribution for an unknown input", name=name)
    specs = box.input_specs + box.output_specs
    weights = np.full(tuple(s.arity for s in specs), Fraction(0), dtype=object)
    for key in assignments(box.input_specs):
        prior = Fraction(1)
        for spec, value in zip(box.input_specs, key):
            dist = input_distributions.get(spec.name)
            prior *= to_fraction(dist[value]) if dist is not None else Fraction(1, spec.arity)
        if prior == 0:
            continue
        for out, p in box.table[key].items():
            weights[key + out] += prior * p
    return JointDistribution([s.name for s in specs], weights)


def random_joints(
    rng: np.random.Generator, names: Sequence[str], count: int, max_weight: int = 100, arity: int = 2
) -> JointDistribution:
    """Batch of `count` joints with integer weights drawn uniformly from 0..max_weight."""
    shape = (count,) + (arity,) * len(names)
    weights = rng.integers(0, max_weight + 1, size=shape)
    flat = weights.reshape(count, -1)
    empty = flat.sum(axis=1) == 0
    while empty.any():
        flat[empty] = rng.integers(0, max_weight + 1, size=(int(empty.sum()), flat.shape[1]))
        empty = flat.sum(axis=1) == 0
    return JointDistribution(names, flat.reshape(shape), batch_ndim=1)
