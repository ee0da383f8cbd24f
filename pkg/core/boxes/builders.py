"""Constructors for the named boxes: PR-box, RAC and the two racboxes."""

from fractions import Fraction
from typing import Iterator

from .models import BipartiteBox, bits

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def make_pr_box() -> BipartiteBox:
    """PR-box: p(a,b|x,y) = 1/2 when a xor b = xy, else 0."""

    def rule(v: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        for a in (0, 1):
            yield HALF, {"a": a, "b": a ^ (v["x"] & v["y"])}

    return BipartiteBox.from_rule(bits("x"), bits("a"), bits("y"), bits("b"), rule)


def make_rac_box() -> BipartiteBox:
    """Ideal random access code: Bob's output is b = x_y."""

    def rule(v: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        yield Fraction(1), {"b": v["x1"] if v["y"] else v["x0"]}

    return BipartiteBox.from_rule(bits("x0", "x1"), (), bits("y"), bits("b"), rule)


def make_nonsignalling_racbox() -> BipartiteBox:
    """Racbox with uniform a and b = x_y xor a xor y'."""

    def rule(v: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        x_y = v["x1"] if v["y"] else v["x0"]
        for a in (0, 1):
            yield HALF, {"a": a, "b": x_y ^ a ^ v["y_prime"]}

    return BipartiteBox.from_rule(bits("x0", "x1"), bits("a"), bits("y", "y_prime"), bits("b"), rule)


def make_signalling_racbox() -> BipartiteBox:
    """Racbox that acts as RAC when a = y' and outputs a fresh random b otherwise."""

    def rule(v: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        x_y = v["x1"] if v["y"] else v["x0"]
        for a in (0, 1):
            if a == v["y_prime"]:
                yield HALF, {"a": a, "b": x_y}
            else:
                for b in (0, 1):
                    yield QUARTER, {"a": a, "b": b}

    return BipartiteBox.from_rule(bits("x0", "x1"), bits("a"), bits("y", "y_prime"), bits("b"), rule)


def make_local_box(alice_rule: tuple[int, int], bob_rule: tuple[int, int]) -> BipartiteBox:
    """Local deterministic box a = alice_rule[x], b = bob_rule[y]."""

    def rule(v: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        yield Fraction(1), {"a": alice_rule[v["x"]], "b": bob_rule[v["y"]]}

    return BipartiteBox.from_rule(bits("x"), bits("a"), bits("y"), bits("b"), rule)


def make_independent_box() -> BipartiteBox:
    """Box with a and b independent uniform bits."""

    def rule(v: dict[str, int]) -> Iterator[tuple[Fraction, dict[str, int]]]:
        for a in (0, 1):
            for b in (0, 1):
                yield QUARTER, {"a": a, "b": b}

    return BipartiteBox.from_rule(bits("x"), bits("a"), bits("y"), bits("b"), rule)


def local_deterministic_boxes() -> list[BipartiteBox]:
    """All 16 local deterministic boxes a = f(x), b = g(y)."""
    rules = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return [make_local_box(f, g) for f in rules for g in rules]
