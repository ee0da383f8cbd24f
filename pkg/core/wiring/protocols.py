"""The named wirings: PR-box and racbox simulations, the erasure protocol and the signalling racbox."""

from fractions import Fraction

from core.boxes.builders import make_nonsignalling_racbox
from core.boxes.checks import is_perfect_rac, is_racbox
from core.boxes.models import BipartiteBox, bits
from core.errors import PreconditionError
from core.rational import bernoulli, to_fraction

from .compose import WiredBox, compose
from .gates import and_, const, copy, cswap, xor
from .models import RandomnessSpec, Wiring


def pr_to_racbox_wiring() -> Wiring:
    """Simulate the nonsignalling racbox with one PR-box and C-NOTs."""
    return Wiring(
        alice_inputs=bits("x0", "x1"),
        alice_outputs=bits("a"),
        bob_inputs=bits("y", "y_prime"),
        bob_outputs=bits("b"),
        alice_pre=(xor("box.x", "x0", "x1"),),
        alice_post=(xor("a", "box.a", "x0"),),
        bob_pre=(copy("box.y", "y"),),
        bob_post=(xor("b", "box.b", "y_prime"),),
        name="pr-to-racbox",
    )


def racbox_to_pr_wiring() -> Wiring:
    """Recover the PR-box from a racbox by fixing x0 = 0 and y' = 0."""
    return Wiring(
        alice_inputs=bits("x"),
        alice_outputs=bits("a"),
        bob_inputs=bits("y"),
        bob_outputs=bits("b"),
        alice_pre=(const("box.x0", 0), copy("box.x1", "x")),
        alice_post=(copy("a", "box.a"),),
        bob_pre=(copy("box.y", "y"), const("box.y_prime", 0)),
        bob_post=(copy("b", "box.b"),),
        name="racbox-to-pr",
    )


def racbox_plus_cbit_wiring() -> Wiring:
    """Send a to Bob, who feeds it into y'."""
    return Wiring(
        alice_inputs=bits("x0", "x1"),
        alice_outputs=(),
        bob_inputs=bits("y"),
        bob_outputs=bits("b"),
        alice_pre=(copy("box.x0", "x0"), copy("box.x1", "x1")),
        message=(copy("m", "box.a"),),
        bob_pre=(copy("box.y", "y"), copy("box.y_prime", "m")),
        bob_post=(copy("b", "box.b"),),
        name="racbox-plus-cbit",
    )


def racbox_plus_cbit_to_rac(inner: BipartiteBox) -> BipartiteBox:
    """A racbox plus one communicated bit gives a perfect RAC."""
    if not is_racbox(inner):
        raise PreconditionError("inner box is not a racbox")
    return compose(inner, racbox_plus_cbit_wiring())


def rac_to_pr_plus_erasure_wiring() -> Wiring:
    """RAC plus a shared random bit: PR-correlations on (x, y) and z sent through an erasure."""
    return Wiring(
        alice_inputs=bits("x", "z"),
        alice_outputs=bits("a"),
        bob_inputs=bits("y"),
        bob_outputs=bits("b", "b_tilde"),
        alice_pre=(copy("box.x0", "z"), copy("box.x1", "x")),
        alice_post=(copy("a", "s"),),
        bob_pre=(copy("box.y", "y"),),
        bob_post=(and_("t", "y", "box.b"), xor("b", "s", "t"), copy("b_tilde", "box.b")),
        shared=bits("s"),
        name="rac-to-pr-erasure",
    )


def rac_to_pr_plus_erasure_protocol(
    p_y1: Fraction = Fraction(1, 2), inner: BipartiteBox | None = None
) -> WiredBox:
    """The erasure protocol around a perfect RAC, with p(y = 1) = p_y1.

    Bob's output b_tilde is his view of z; y is the erasure flag.
    """
    p_y1 = to_fraction(p_y1)
    if not 0 <= p_y1 <= 1:
        raise PreconditionError("p_y1 outside [0, 1]", p_y1=str(p_y1))
    if inner is None:
        inner = racbox_plus_cbit_to_rac(make_nonsignalling_racbox())
    if not is_perfect_rac(inner):
        raise PreconditionError("inner box is not a perfect RAC")
    return WiredBox(
        inner=inner,
        wiring=rac_to_pr_plus_erasure_wiring(),
        randomness=RandomnessSpec(),
        input_distributions={"y": bernoulli(p_y1)},
    )


def signalling_racbox_wiring() -> Wiring:
    """Signalling racbox from a RAC: Bob swaps in a fresh random bit unless a = y'."""
    return Wiring(
        alice_inputs=bits("x0", "x1"),
        alice_outputs=bits("a"),
        bob_inputs=bits("y", "y_prime"),
        bob_outputs=bits("b"),
        alice_pre=(copy("box.x0", "x0"), copy("box.x1", "x1")),
        alice_post=(copy("a", "r_a"),),
        message=(copy("m", "a"),),
        bob_pre=(copy("box.y", "y"),),
        bob_post=(xor("c", "m", "y_prime"), cswap(("b", "discarded"), "c", "box.b", "r_b")),
        alice_random=bits("r_a"),
        bob_random=bits("r_b"),
        name="signalling-racbox",
    )
