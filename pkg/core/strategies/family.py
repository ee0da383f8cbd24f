"""Routed perfect strategies, evaluated together as one batched joint.

In a routed strategy y'~ equals a~ for every state, so the racbox acts as a
RAC together with a shared uniform bit a~, and Bob's view (y, m) is
equivalent to (y, a~). Such a strategy is determined, up to relabeling m,
by its encoding, Alice's output map and Bob's input map; the joint uses
s = a~.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from core.boxes.models import BipartiteBox
from core.infotheory.distribution import JointDistribution
from core.rational import bernoulli, to_fraction

from .enumerate import IDENTITY_OUTPUT_INDEX
from .models import DeterministicStrategy, encode_pairs
from .sweep import STATE_A, STATE_X, STATE_Z, TABLE_BITS, box_tensor, perfect_decoder

logger = logging.getLogger(__name__)

ROUTED_MESSAGE = 170  # m = a~
ROUTED_YPRIME = 10  # y'~ = m
FAMILY_NAMES = ("x", "z", "y", "s", "y_tilde", "b_tilde", "a")
ENCODINGS = np.array([encode_pairs(e) for e in range(256)])  # (256, 4, 2)


@dataclass(frozen=True)
class RoutedFamily:
    """Perfect routed strategies with their joints over FAMILY_NAMES, batched along axis 0."""

    box: BipartiteBox
    p_y1: Fraction
    prefixes: np.ndarray  # (n, 3): encoding, alice_output, bob_input
    joint: JointDistribution

    def __len__(self) -> int:
        return len(self.prefixes)

    def strategy(self, k: int) -> DeterministicStrategy:
        e, aout, g = (int(v) for v in self.prefixes[k])
        return perfect_decoder((e, ROUTED_MESSAGE, aout, g, ROUTED_YPRIME), self.box, self.p_y1)

    def output_ignores_z(self) -> np.ndarray:
        """Members whose Alice output is a function of (x, a~) only."""
        bits = TABLE_BITS[self.prefixes[:, 1]]
        return np.all(bits[:, [0, 1, 4, 5]] == bits[:, [2, 3, 6, 7]], axis=1)

    def subset(self, mask: np.ndarray) -> "RoutedFamily":
        joint = JointDistribution(FAMILY_NAMES, self.joint.weights[mask], batch_ndim=1)
        return RoutedFamily(self.box, self.p_y1, self.prefixes[mask], joint)


def routed_perfect_family(
    box: BipartiteBox, p_y1: Fraction = Fraction(1, 2), general_alice_output: bool = True
) -> RoutedFamily:
    """Every routed strategy with perfect PR-correlations on the racbox `box`."""
    tensor = box_tensor(box)
    p_y1 = to_fraction(p_y1)
    p_y = bernoulli(p_y1)
    scale = math.lcm(*(p.denominator for p in p_y))
    weight_y = [int(p * scale) for p in p_y]
    outputs_index = np.arange(256) if general_alice_output else np.array([IDENTITY_OUTPUT_INDEX])
    outputs = TABLE_BITS[outputs_index]

    found: list[tuple[int, int, int]] = []
    cells = 2 * STATE_A[:, None] + np.arange(2)[None, :]  # (8, b~)
    for e in range(256):
        x0 = ENCODINGS[e, 2 * STATE_X + STATE_Z, 0]
        x1 = ENCODINGS[e, 2 * STATE_X + STATE_Z, 1]
        for g in range(4):
            ok = np.ones(len(outputs_index), dtype=bool)
            for y in (0, 1):
                if not weight_y[y]:
                    continue
                weights = tensor[x0, x1, (g >> y) & 1, STATE_A, STATE_A]  # (8, b~)
                support = np.zeros((8, 4), dtype=np.float32)
                for b in (0, 1):
                    support[np.arange(8), cells[:, b]] = weights[:, b] > 0
                target = (outputs ^ (STATE_X[None, :] & y)).astype(np.float32)  # (A, 8)
                has_one = (support.T @ target.T) > 0
                has_zero = (support.T @ (1 - target).T) > 0
                ok &= ~(has_one & has_zero).any(axis=0)
            found.extend((e, int(outputs_index[i]), g) for i in np.nonzero(ok)[0])

    prefixes = np.array(found, dtype=np.int64).reshape(-1, 3)
    n = len(prefixes)
    weights = np.zeros((n,) + (2,) * len(FAMILY_NAMES), dtype=np.int64)
    rows = np.arange(n)
    for i in range(8):
        x, z, at = int(STATE_X[i]), int(STATE_Z[i]), int(STATE_A[i])
        x0 = ENCODINGS[prefixes[:, 0], 2 * x + z, 0]
        x1 = ENCODINGS[prefixes[:, 0], 2 * x + z, 1]
        a = TABLE_BITS[prefixes[:, 1], i]
        for y in (0, 1):
            if not weight_y[y]:
                continue
            y_tilde = (prefixes[:, 2] >> y) & 1
            for b in (0, 1):
                weights[rows, x, z, y, at, y_tilde, b, a] += tensor[x0, x1, y_tilde, at, at, b] * weight_y[y]
    logger.info("Routed perfect family: %d members", n)
    joint = JointDistribution(FAMILY_NAMES, weights, batch_ndim=1)
    return RoutedFamily(box, p_y1, prefixes, joint)
