from fractions import Fraction

import pytest

from core.channels import (
    ChannelClass,
    ChannelKind,
    ClassicalChannel,
    classify_channel,
    erasure_channel,
    erasure_overlap,
    erasure_to_amplitude_damping,
    identity_channel,
    is_postprocessing_of_erasure,
)
from core.errors import BoxValidationError, PreconditionError, SignatureError

F = Fraction


def binary(row0: dict, row1: dict) -> ClassicalChannel:
    return ClassicalChannel(("out",), {0: {(o,): p for o, p in row0.items()}, 1: {(o,): p for o, p in row1.items()}})


DEPOLARIZING = binary({0: F(3, 4), 1: F(1, 4)}, {0: F(1, 4), 1: F(3, 4)})
ZERO = binary({0: F(1, 3), 1: F(2, 3)}, {0: F(1, 3), 1: F(2, 3)})
OTHER = binary({0: F(1, 2), 1: F(1, 2)}, {0: F(1, 5), 1: F(4, 5)})
AMPLITUDE = erasure_to_amplitude_damping(F(1, 2))[1]


class TestClassification:
    def test_erasure(self):
        assert classify_channel(erasure_channel(F(1, 4))) == ChannelClass(ChannelKind.ERASURE, F(1, 4))

    def test_identity_is_erasure_zero(self):
        assert classify_channel(identity_channel()) == ChannelClass(ChannelKind.ERASURE, F(0))

    def test_depolarizing(self):
        assert classify_channel(DEPOLARIZING) == ChannelClass(ChannelKind.DEPOLARIZING, F(1, 2))

    def test_zero_capacity(self):
        assert classify_channel(ZERO).kind == ChannelKind.ZERO_CAPACITY
        assert ZERO.mutual_information() == pytest.approx(0.0, abs=1e-12)

    def test_amplitude_damping(self):
        assert classify_channel(AMPLITUDE) == ChannelClass(ChannelKind.AMPLITUDE_DAMPING, F(1, 2))

    def test_unequal_ratios_are_other(self):
        assert classify_channel(OTHER) == ChannelClass(ChannelKind.OTHER)

    def test_str(self):
        assert str(ChannelClass(ChannelKind.ERASURE, F(1, 2))) == "erasure(1/2)"
        assert str(ChannelClass(ChannelKind.OTHER)) == "other"


class TestCanonicalForm:
    def test_split_erasure_symbol_merges(self):
        split = ClassicalChannel(
            ("out", "flag"),
            {
                0: {(0, 0): F(1, 2), (0, 1): F(1, 4), (1, 1): F(1, 4)},
                1: {(1, 0): F(1, 2), (0, 1): F(1, 4), (1, 1): F(1, 4)},
            },
        )
        assert split.canonical() == erasure_channel(F(1, 2)).canonical()
        assert classify_channel(split) == ChannelClass(ChannelKind.ERASURE, F(1, 2))

    def test_relabeled_outputs_share_canonical_form(self):
        flipped = binary({0: F(1, 4), 1: F(3, 4)}, {0: F(3, 4), 1: F(1, 4)})
        assert flipped.canonical() == DEPOLARIZING.canonical()

    def test_rows_must_be_distributions(self):
        with pytest.raises(BoxValidationError):
            binary({0: F(1, 2)}, {0: F(1)})

    def test_input_must_be_binary(self):
        with pytest.raises(SignatureError):
            ClassicalChannel(("out",), {0: {(0,): F(1)}})


class TestErasureDegradation:
    @pytest.mark.parametrize("channel", [erasure_channel(F(1, 2)), DEPOLARIZING, ZERO, OTHER, AMPLITUDE])
    @pytest.mark.parametrize("epsilon", [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)])
    def test_lp_agrees_with_overlap_criterion(self, channel, epsilon):
        exact = is_postprocessing_of_erasure(channel, epsilon, method="exact")
        assert is_postprocessing_of_erasure(channel, epsilon, method="lp") == exact
        assert exact == (epsilon == 0 or erasure_overlap(channel) >= epsilon)

    def test_identity_is_not_degraded_from_half_erasure(self):
        assert not is_postprocessing_of_erasure(identity_channel(), F(1, 2))

    def test_epsilon_out_of_range(self):
        with pytest.raises(PreconditionError):
            is_postprocessing_of_erasure(identity_channel(), F(2))
        with pytest.raises(PreconditionError):
            erasure_channel(F(-1, 2))

    def test_unknown_method(self):
        with pytest.raises(PreconditionError):
            is_postprocessing_of_erasure(identity_channel(), F(1, 2), method="simplex")

    def test_erasure_mutual_information(self):
        assert erasure_channel(F(1, 4)).mutual_information() == pytest.approx(0.75)


class TestAmplitudeDampingConstruction:
    def test_reproduces_damping_table(self):
        mapping, channel = erasure_to_amplitude_damping(F(1, 2))
        assert channel.table[0] == {(0, 0): F(1, 2), (0, 1): F(1, 4), (1, 1): F(1, 4)}
        assert channel.table[1] == {(0, 0): F(1, 4), (1, 0): F(1, 4), (1, 1): F(1, 2)}
        assert mapping[(0, 1)] == {(0, 0): F(1, 2), (1, 1): F(1, 2)}

    def test_flag_zero_view(self):
        # given flag 0, input 0 is delivered surely and input 1 is a fair coin
        _, channel = erasure_to_amplitude_damping(F(1, 2))
        given_0 = {o[0]: p for o, p in channel.table[0].items() if o[1] == 0}
        given_1 = {o[0]: p for o, p in channel.table[1].items() if o[1] == 0}
        assert given_0 == {0: F(1, 2)}
        assert given_1 == {0: F(1, 4), 1: F(1, 4)}

    def test_mirrored_variant(self):
        _, channel = erasure_to_amplitude_damping(F(1, 2), erased_outputs=(1, 0))
        assert channel.table[0] == {(0, 0): F(1, 4), (1, 0): F(1, 4), (0, 1): F(1, 2)}
        assert classify_channel(channel) == ChannelClass(ChannelKind.AMPLITUDE_DAMPING, F(1, 2))

    def test_construction_is_degraded_erasure(self):
        _, channel = erasure_to_amplitude_damping(F(1, 2))
        assert is_postprocessing_of_erasure(channel, F(1, 2), method="lp")
