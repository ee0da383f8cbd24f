from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.boxes import (
    BipartiteBox,
    bits,
    check_nonsignalling,
    is_perfect_rac,
    make_nonsignalling_racbox,
    make_pr_box,
    make_rac_box,
    make_signalling_racbox,
    satisfies_pr_correlations,
)
from core.channels import ChannelClass, ChannelKind, classify_channel, erasure_overlap
from core.errors import BudgetViolationError, CodecError, PreconditionError, SignatureError, VisibilityError
from core.wiring import (
    RandomnessSpec,
    Wiring,
    compose,
    dumps_wiring,
    identity_wiring,
    loads_wiring,
    pr_to_racbox_wiring,
    rac_to_pr_plus_erasure_protocol,
    racbox_plus_cbit_to_rac,
    racbox_plus_cbit_wiring,
    racbox_to_pr_wiring,
    read_wiring_file,
    signalling_racbox_wiring,
    write_wiring_file,
)
from core.wiring.gates import copy, lut, xor


class TestEquivalence:
    def test_pr_to_racbox(self):
        assert compose(make_pr_box(), pr_to_racbox_wiring()) == make_nonsignalling_racbox()

    def test_racbox_to_pr(self):
        assert compose(make_nonsignalling_racbox(), racbox_to_pr_wiring()) == make_pr_box()

    def test_roundtrip(self):
        racbox = compose(make_pr_box(), pr_to_racbox_wiring())
        assert compose(racbox, racbox_to_pr_wiring()) == make_pr_box()

    def test_identity_wiring(self, sig_racbox):
        assert compose(sig_racbox, identity_wiring(sig_racbox)) == sig_racbox

    def test_signalling_racbox_from_rac(self):
        assert compose(make_rac_box(), signalling_racbox_wiring()) == make_signalling_racbox()

    @pytest.mark.parametrize("build", [make_nonsignalling_racbox, make_signalling_racbox])
    def test_racbox_plus_bit_is_rac(self, build):
        rac = racbox_plus_cbit_to_rac(build())
        assert is_perfect_rac(rac)
        assert rac == make_rac_box()

    def test_racbox_plus_bit_needs_a_racbox(self):
        with pytest.raises(SignatureError):
            racbox_plus_cbit_to_rac(make_pr_box())


class TestErasureProtocol:
    @pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
    def test_perfect_pr_and_erasure(self, p):
        protocol = rac_to_pr_plus_erasure_protocol(p)
        assert satisfies_pr_correlations(protocol.pr_box())
        channel = protocol.channel()
        assert classify_channel(channel) == ChannelClass(ChannelKind.ERASURE, p)
        assert erasure_overlap(channel) == p
        assert channel.mutual_information() == pytest.approx(float(1 - p), abs=1e-12)

    def test_always_flagged_carries_nothing(self):
        channel = rac_to_pr_plus_erasure_protocol(Fraction(1)).channel()
        assert classify_channel(channel).kind == ChannelKind.ZERO_CAPACITY

    def test_never_flagged_is_noiseless(self):
        channel = rac_to_pr_plus_erasure_protocol(Fraction(0)).channel()
        assert classify_channel(channel) == ChannelClass(ChannelKind.ERASURE, Fraction(0))

    def test_out_of_range(self):
        with pytest.raises(PreconditionError):
            rac_to_pr_plus_erasure_protocol(Fraction(3, 2))

    def test_inner_must_be_rac(self):
        with pytest.raises(PreconditionError):
            rac_to_pr_plus_erasure_protocol(Fraction(1, 2), inner=_noisy_rac())

    def test_joint_names(self):
        joint = rac_to_pr_plus_erasure_protocol(Fraction(1, 2)).joint()
        assert joint.names == ("x", "z", "y", "a", "b", "b_tilde")


def _noisy_rac() -> BipartiteBox:
    def rule(v):
        yield Fraction(1, 2), {"b": 0}
        yield Fraction(1, 2), {"b": 1}

    return BipartiteBox.from_rule(bits("x0", "x1"), (), bits("y"), bits("b"), rule)


class TestWiringValidation:
    def test_bob_cannot_read_alice_input(self):
        with pytest.raises(VisibilityError):
            Wiring(
                alice_inputs=bits("x"),
                alice_outputs=bits("a"),
                bob_inputs=bits("y"),
                bob_outputs=bits("b"),
                alice_pre=(copy("box.x", "x"),),
                alice_post=(copy("a", "box.a"),),
                bob_pre=(copy("box.y", "x"),),
                bob_post=(copy("b", "box.b"),),
            )

    def test_message_needs_a_message_stage(self):
        with pytest.raises(BudgetViolationError):
            Wiring(
                alice_inputs=bits("x"),
                alice_outputs=bits("a"),
                bob_inputs=bits("y"),
                bob_outputs=bits("b"),
                alice_pre=(copy("box.x", "x"),),
                alice_post=(copy("a", "box.a"),),
                bob_pre=(copy("box.y", "m"),),
                bob_post=(copy("b", "box.b"),),
            )

    def test_outputs_must_be_assigned(self):
        with pytest.raises(SignatureError):
            Wiring(
                alice_inputs=bits("x"),
                alice_outputs=bits("a"),
                bob_inputs=bits("y"),
                bob_outputs=bits("b"),
                alice_pre=(copy("box.x", "x"),),
                bob_pre=(copy("box.y", "y"),),
                bob_post=(copy("b", "box.b"),),
            )

    def test_inner_box_must_not_signal_back(self):
        def rule(v):
            yield Fraction(1), {"a": v["y"], "b": 0}

        backwards = BipartiteBox.from_rule(bits("x"), bits("a"), bits("y"), bits("b"), rule)
        with pytest.raises(PreconditionError):
            compose(backwards, identity_wiring(backwards))

    def test_wiring_must_set_every_box_input(self):
        wiring = Wiring(
            alice_inputs=bits("x0", "x1"),
            alice_outputs=bits("a"),
            bob_inputs=bits("y"),
            bob_outputs=bits("b"),
            alice_pre=(copy("box.x0", "x0"), copy("box.x1", "x1")),
            alice_post=(copy("a", "box.a"),),
            bob_pre=(copy("box.y", "y"),),
            bob_post=(copy("b", "box.b"),),
        )
        with pytest.raises(SignatureError):
            compose(make_nonsignalling_racbox(), wiring)


class TestWiringCodec:
    @pytest.mark.parametrize(
        "wiring",
        [pr_to_racbox_wiring(), racbox_to_pr_wiring(), racbox_plus_cbit_wiring(), signalling_racbox_wiring()],
    )
    def test_roundtrip(self, wiring):
        parsed, randomness = loads_wiring(dumps_wiring(wiring))
        assert parsed == wiring
        assert randomness == RandomnessSpec()

    def test_distributions_and_arity(self, tmp_path):
        text = "\n".join(
            [
                "wiring v1 biased",
                "alice inputs: x",
                "alice outputs: a",
                "bob inputs: y",
                "bob outputs: b",
                "shared s:3 = 1/2 1/4 1/4",
                "alice pre:",
                "  box.x = copy x",
                "alice post:",
                "  a = copy box.a",
                "bob pre:",
                "  box.y = copy y",
                "bob post:",
                "  b = copy box.b",
            ]
        )
        wiring, randomness = loads_wiring(text)
        assert wiring.shared[0].arity == 3
        assert randomness.distribution(wiring.shared[0]) == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
        path = tmp_path / "biased.wiring"
        write_wiring_file(path, wiring, randomness)
        assert read_wiring_file(path) == (wiring, randomness)
        assert compose(make_pr_box(), wiring, randomness) == make_pr_box()

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "binary.wiring"
        path.write_bytes(b"\xff\xfe\x00wiring")
        with pytest.raises(CodecError) as info:
            read_wiring_file(path)
        assert info.value.context["path"] == str(path)
        with pytest.raises(CodecError):
            read_wiring_file(tmp_path / "absent.wiring")

    def test_unknown_gate_reports_line(self):
        text = dumps_wiring(pr_to_racbox_wiring()).replace("xor x0 x1", "nand x0 x1")
        with pytest.raises(CodecError) as info:
            loads_wiring(text)
        assert info.value.line == 7

    def test_invalid_wiring_becomes_codec_error(self):
        text = dumps_wiring(racbox_to_pr_wiring()).replace("box.y = copy y", "box.y = copy x")
        with pytest.raises(CodecError):
            loads_wiring(text)


@st.composite
def local_wirings(draw):
    """Wirings of a PR-box using only local lookups and one shared bit."""

    def table(n):
        return tuple(draw(st.lists(st.integers(0, 1), min_size=2**n, max_size=2**n)))

    return Wiring(
        alice_inputs=bits("x"),
        alice_outputs=bits("a"),
        bob_inputs=bits("y"),
        bob_outputs=bits("b"),
        alice_pre=(lut("box.x", table(2), "x", "s"),),
        alice_post=(lut("t", table(3), "x", "s", "box.a"), xor("a", "t", "box.a")),
        bob_pre=(lut("box.y", table(2), "y", "s"),),
        bob_post=(lut("b", table(3), "y", "s", "box.b"),),
        shared=bits("s"),
        name="random-local",
    )


@given(local_wirings())
@settings(max_examples=40, deadline=None)
def test_local_wirings_keep_tables_normalized_and_nonsignalling(wiring):
    box = compose(make_pr_box(), wiring)
    for _, row in box.rows():
        assert sum(row.values()) == 1
    assert check_nonsignalling(box).nonsignalling
