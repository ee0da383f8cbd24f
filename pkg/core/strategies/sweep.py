"""Exhaustive sweep of perfect strategies, vectorized over message and output maps.

A strategy prefix fixes every map but Bob's decoder. Alice's state is
i = (x, z, a~), indexed 4x + 2z + a~. For each y, Bob's part of the prefix
is a slice (y~, y'~ as a function of m), eight per y. A prefix admits a
perfect decoder iff for both y every reachable Bob view (m, b~) sees a
single value of a xor xy; the decoder is then fixed on the reachable views
and free elsewhere, and every perfect decoder induces the same joint.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from tqdm import tqdm

from core.boxes.models import BipartiteBox
from core.channels.models import ClassicalChannel
from core.errors import PreconditionError
from core.rational import bernoulli, to_fraction

from .enumerate import IDENTITY_OUTPUT_INDEX
from .models import DeterministicStrategy, encode_pairs
from .run import _require_racbox, run_strategy

logger = logging.getLogger(__name__)

STATE_X = np.arange(8) >> 2
STATE_Z = (np.arange(8) >> 1) & 1
STATE_A = np.arange(8) & 1
# bit i of every 8-bit table index
TABLE_BITS = (np.arange(256)[:, None] >> np.arange(8)[None, :]) & 1
BRANCHES = ("unrouted", "routed/constant_input", "routed/varying_input")
CHUNK = 16


def box_tensor(box: BipartiteBox) -> np.ndarray:
    """Racbox table as integers R[x0, x1, y, y', a, b] over a common denominator."""
    _require_racbox(box)
    scale = math.lcm(*(p.denominator for _, row in box.rows() for p in row.values()))
    tensor = np.zeros((2,) * 6, dtype=np.int64)
    for inputs, row in box.rows():
        for (a, b), p in row.items():
            tensor[inputs["x0"], inputs["x1"], inputs["y"], inputs["y_prime"], a, b] = int(p * scale)
    return tensor


def slice_maps(k: int) -> tuple[int, int, int]:
    """(y~, y'~ at m = 0, y'~ at m = 1) of slice k."""
    return k >> 2, (k >> 1) & 1, k & 1


def prefix_maps(k0: int, k1: int) -> tuple[int, int]:
    """bob_input and bob_yprime indices for slices k0 (y = 0) and k1 (y = 1)."""
    g0, h00, h01 = slice_maps(k0)
    g1, h10, h11 = slice_maps(k1)
    return g0 | (g1 << 1), h00 | (h01 << 1) | (h10 << 2) | (h11 << 3)


@dataclass(frozen=True)
class SliceTables:
    """Per-slice data for one encoding and one y, indexed by message map."""

    perfect: np.ndarray  # (8, 256, A) bool
    reach: np.ndarray  # (8, 256) reachable (m, b~) views
    routed: np.ndarray  # (8, 256) y'~ = a~ for every state
    z_counts: np.ndarray  # (8, 256, z, m, b~)
    x_counts: np.ndarray  # (8, 256, x, m, b~)


def _slice_tables(tensor: np.ndarray, encoding: int, y: int, outputs: np.ndarray, active: bool) -> SliceTables:
    pairs = np.array(encode_pairs(encoding))
    x0 = pairs[2 * STATE_X + STATE_Z, 0][None, :]
    x1 = pairs[2 * STATE_X + STATE_Z, 1][None, :]
    rows = np.arange(256)[:, None]
    states = np.arange(8)[None, :]
    target = (outputs ^ (STATE_X[None, :] & y)).astype(np.float32)  # (A, 8)

    n_out = outputs.shape[0]
    perfect = np.ones((8, 256, n_out), dtype=bool)
    reach = np.zeros((8, 256), dtype=np.int64)
    routed = np.ones((8, 256), dtype=bool)
    z_counts = np.zeros((8, 256, 2, 2, 2), dtype=np.int64)
    x_counts = np.zeros((8, 256, 2, 2, 2), dtype=np.int64)
    if not active:
        return SliceTables(perfect, reach, routed, z_counts, x_counts)

    for k in range(8):
        y_tilde, h0, h1 = slice_maps(k)
        y_prime = np.array([h0, h1])[TABLE_BITS]  # (256, 8)
        weights = tensor[x0, x1, y_tilde, y_prime, STATE_A[None, :]]  # (256, 8, b~)
        support = np.zeros((256, 8, 4), dtype=np.float32)
        for b in (0, 1):
            support[rows, states, 2 * TABLE_BITS + b] = weights[..., b] > 0
            np.add.at(z_counts[k], (rows, STATE_Z[None, :], TABLE_BITS, b), weights[..., b])
            np.add.at(x_counts[k], (rows, STATE_X[None, :], TABLE_BITS, b), weights[..., b])
        views = support.transpose(0, 2, 1)  # (256, 4, 8)
        has_one = (views @ target.T) > 0  # (256, 4, A)
        has_zero = (views @ (1 - target).T) > 0
        perfect[k] = ~(has_one & has_zero).any(axis=1)
        reach[k] = support.any(axis=1).sum(axis=1)
        routed[k] = (y_prime == STATE_A[None, :]).all(axis=1)
    return SliceTables(perfect, reach, routed, z_counts, x_counts)


@dataclass
class SweepEntry:
    """Perfect strategies sharing one (branch, z-channel, x-channel) key."""

    strategies: int = 0
    prefixes: int = 0
    representative: tuple[int, int, int, int, int] | None = None

    def absorb(self, other: "SweepEntry") -> None:
        self.strategies += other.strategies
        self.prefixes += other.prefixes
        if other.representative is not None and (
            self.representative is None or other.representative < self.representative
        ):
            self.representative = other.representative


@dataclass
class SweepResult:
    """Aggregated sweep output; `merge` is associative and order independent.

    Keys are (branch code, z counts at y = 0, z counts at y = 1, x counts at
    y = 0, x counts at y = 1) with each counts block flattened over
    (input, m, b~).
    """

    p_y1: Fraction
    general_alice_output: bool
    encodings: frozenset[int] = frozenset()
    entries: dict[tuple[int, ...], SweepEntry] = field(default_factory=dict)

    def merge(self, other: "SweepResult") -> "SweepResult":
        if (self.p_y1, self.general_alice_output) != (other.p_y1, other.general_alice_output):
            raise PreconditionError("cannot merge sweeps with different settings")
        if self.encodings & other.encodings:
            raise PreconditionError("sweeps overlap", encodings=sorted(self.encodings & other.encodings))
        entries = {key: SweepEntry(e.strategies, e.prefixes, e.representative) for key, e in self.entries.items()}
        for key, entry in other.entries.items():
            entries.setdefault(key, SweepEntry()).absorb(entry)
        return SweepResult(self.p_y1, self.general_alice_output, self.encodings | other.encodings, entries)

    @property
    def output_maps(self) -> int:
        return 256 if self.general_alice_output else 1

    @property
    def examined_prefixes(self) -> int:
        return len(self.encodings) * 256 * self.output_maps * 64

    @property
    def examined_strategies(self) -> int:
        return self.examined_prefixes * 65536

    @property
    def perfect_strategies(self) -> int:
        return sum(e.strategies for e in self.entries.values())

    @property
    def perfect_prefixes(self) -> int:
        return sum(e.prefixes for e in self.entries.values())

    @property
    def complete(self) -> bool:
        return len(self.encodings) == 256

    def branch(self, key: tuple[int, ...]) -> str:
        return BRANCHES[key[0]]

    def channels(self, key: tuple[int, ...]) -> tuple[ClassicalChannel, ClassicalChannel]:
        """(z channel, x channel) of an entry, with outputs (b~, y, m)."""
        counts = np.array(key[1:], dtype=np.int64).reshape(4, 2, 2, 2)
        p_y = bernoulli(self.p_y1)

        def channel(blocks: np.ndarray, input_name: str) -> ClassicalChannel:
            table: dict[int, dict[tuple[int, ...], Fraction]] = {0: {}, 1: {}}
            for y, block in enumerate(blocks):
                if not p_y[y]:
                    continue
                for v in (0, 1):
                    total = int(block[v].sum())
                    for m in (0, 1):
                        for b in (0, 1):
                            if block[v, m, b]:
                                table[v][(b, y, m)] = p_y[y] * Fraction(int(block[v, m, b]), total)
            return ClassicalChannel(("b_tilde", "y", "m"), table, input_name)

        return channel(counts[0:2], "z"), channel(counts[2:4], "x")


def _sweep_chunk(
    tensor: np.ndarray, encodings: Sequence[int], p_y1: Fraction, general_alice_output: bool
) -> SweepResult:
    outputs_index = np.arange(256) if general_alice_output else np.array([IDENTITY_OUTPUT_INDEX])
    outputs = TABLE_BITS[outputs_index]
    p_y = bernoulli(p_y1)
    result = SweepResult(p_y1, general_alice_output, frozenset(encodings))
    for encoding in encodings:
        tables = [_slice_tables(tensor, encoding, y, outputs, bool(p_y[y])) for y in (0, 1)]
        for k0 in range(8):
            for k1 in range(8):
                mask = tables[0].perfect[k0] & tables[1].perfect[k1]
                per_message = mask.sum(axis=1)
                messages = np.nonzero(per_message)[0]
                if not messages.size:
                    continue
                g, h = prefix_maps(k0, k1)
                routed = tables[0].routed[k0][messages] & tables[1].routed[k1][messages]
                branch = np.where(routed, 1 if (k0 >> 2) == (k1 >> 2) else 2, 0)
                free = 16 - tables[0].reach[k0][messages] - tables[1].reach[k1][messages]
                strategies = per_message[messages].astype(np.int64) << free
                keys = np.concatenate(
                    [
                        branch[:, None],
                        tables[0].z_counts[k0][messages].reshape(-1, 8),
                        tables[1].z_counts[k1][messages].reshape(-1, 8),
                        tables[0].x_counts[k0][messages].reshape(-1, 8),
                        tables[1].x_counts[k1][messages].reshape(-1, 8),
                    ],
                    axis=1,
                )
                unique, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
                inverse = inverse.reshape(-1)
                strategy_sums = np.zeros(len(unique), dtype=np.int64)
                prefix_sums = np.zeros(len(unique), dtype=np.int64)
                np.add.at(strategy_sums, inverse, strategies)
                np.add.at(prefix_sums, inverse, per_message[messages])
                for row, key in enumerate(unique):
                    message = int(messages[first[row]])
                    output = int(outputs_index[int(np.argmax(mask[message]))])
                    entry = SweepEntry(
                        int(strategy_sums[row]), int(prefix_sums[row]), (encoding, message, output, g, h)
                    )
                    result.entries.setdefault(tuple(int(v) for v in key), SweepEntry()).absorb(entry)
        logger.debug("Swept encoding %d", encoding)
    return result


def sweep_perfect_strategies(
    box: BipartiteBox,
    p_y1: Fraction = Fraction(1, 2),
    general_alice_output: bool = False,
    parallelism: int = 1,
    encodings: Iterable[int] | None = None,
    progress: bool = True,
) -> SweepResult:
    """Every strategy with perfect PR-correlations, grouped by branch and induced channels.

    x and z are uniform and p(y = 1) = p_y1. `encodings` restricts the
    sweep to some Alice encoding indices; the default covers all 256.
    """
    tensor = box_tensor(box)
    p_y1 = to_fraction(p_y1)
    if not 0 <= p_y1 <= 1:
        raise PreconditionError("p_y1 outside [0, 1]", p_y1=str(p_y1))
    if parallelism < 1:
        raise PreconditionError("parallelism must be at least 1", parallelism=parallelism)
    selected = sorted(set(range(256) if encodings is None else encodings))
    if any(not 0 <= e < 256 for e in selected):
        raise PreconditionError("encoding index outside 0..255")
    chunks = [selected[i : i + CHUNK] for i in range(0, len(selected), CHUNK)]
    logger.info(
        "Sweeping %d encodings (general alice output: %s, parallelism %d)",
        len(selected), general_alice_output, parallelism,
    )

    result = SweepResult(p_y1, general_alice_output)
    with tqdm(total=len(chunks), desc="sweep", unit="chunk", disable=None if progress else True) as bar:
        if parallelism == 1:
            for chunk in chunks:
                result = result.merge(_sweep_chunk(tensor, chunk, p_y1, general_alice_output))
                bar.update()
        else:
            with ThreadPoolExecutor(max_workers=parallelism) as pool:
                futures = [pool.submit(_sweep_chunk, tensor, chunk, p_y1, general_alice_output) for chunk in chunks]
                for future in futures:
                    result = result.merge(future.result())
                    bar.update()
    logger.info(
        "Sweep done: %d perfect strategies in %d channel classes", result.perfect_strategies, len(result.entries)
    )
    return result


def perfect_decoder(
    prefix: Sequence[int], box: BipartiteBox, p_y1: Fraction = Fraction(1, 2)
) -> DeterministicStrategy:
    """Complete a prefix (encode, message, output, input, y'~ indices) with a perfect decoder.

    Views Bob never reaches decode to 0.
    """
    base = DeterministicStrategy.from_indices(tuple(prefix) + (0,))
    joint = run_strategy(base, box, {"y": bernoulli(to_fraction(p_y1))})
    decoder: dict[int, int] = {}
    for key in joint.exact_table():
        x, _, y, m, _, y_tilde, _, b_tilde, a, _ = key
        index = 8 * y + 4 * y_tilde + 2 * b_tilde + m
        target = a ^ (x & y)
        if decoder.setdefault(index, target) != target:
            raise PreconditionError("prefix admits no perfect decoder", prefix=tuple(prefix))
    bits = sum(bit << index for index, bit in decoder.items())
    return DeterministicStrategy.from_indices(tuple(prefix) + (bits,))
