from fractions import Fraction

import numpy as np
import pytest

from core.boxes import make_nonsignalling_racbox, make_pr_box, make_signalling_racbox
from core.channels import erasure_overlap
from core.errors import PreconditionError, SignatureError
from core.strategies import (
    ChannelClass,
    ChannelKind,
    DeterministicStrategy,
    MixedStrategy,
    classify_channel,
    component_ranges,
    compose_mixed_strategy,
    depolarizing_strategy,
    enumerate_strategies,
    fig3_strategy,
    ignore_box_strategy,
    imperfect_strategy,
    induced_channel,
    is_postprocessing_of_erasure,
    nonsignalling_transmission_strategy,
    perfect_decoder,
    pr_success_probability,
    run_mixed_strategy,
    run_strategy,
    strategy_space_size,
    sweep_perfect_strategies,
    table_case_strategy,
)
from core.strategies.catalog import random_strategy
from core.strategies.run import JOINT_NAMES
from core.strategies.verify import (
    TABLE_CASES,
    lemma2_suite,
    verify_chsh_classical,
    verify_lemma2_decomposition,
    verify_lemma3,
    verify_table2,
    verify_theorem1,
)

HALF = Fraction(1, 2)


class TestCatalog:
    def test_bit_routing_gives_half_erasure(self, sig_racbox):
        joint = run_strategy(fig3_strategy(), sig_racbox)
        assert pr_success_probability(joint) == 1
        assert fig3_strategy().branch() == "routed/varying_input"
        channel = induced_channel(joint)
        assert classify_channel(channel) == ChannelClass(ChannelKind.ERASURE, HALF)
        assert is_postprocessing_of_erasure(channel, HALF)

    @pytest.mark.parametrize("strategy", [fig3_strategy(), *(table_case_strategy(c) for c in (1, 2, 3))])
    def test_output_channel_is_degraded_like_the_view(self, sig_racbox, strategy):
        joint = run_strategy(strategy, sig_racbox)
        view = induced_channel(joint)
        decoded = induced_channel(joint, outputs=("b",), flags=("y",))
        assert is_postprocessing_of_erasure(view, HALF)
        assert is_postprocessing_of_erasure(decoded, HALF)
        assert erasure_overlap(decoded) >= erasure_overlap(view)

    def test_erasure_follows_p_y1(self, sig_racbox):
        joint = run_strategy(fig3_strategy(), sig_racbox, {"y": (Fraction(3, 4), Fraction(1, 4))})
        assert pr_success_probability(joint) == 1
        assert classify_channel(induced_channel(joint)) == ChannelClass(ChannelKind.ERASURE, Fraction(1, 4))

    @pytest.mark.parametrize("case", [1, 2, 3])
    def test_table_cases(self, sig_racbox, case):
        strategy = table_case_strategy(case)
        joint = run_strategy(strategy, sig_racbox)
        z_expected, x_expected = TABLE_CASES[case]
        assert pr_success_probability(joint) == 1
        assert strategy.branch() == "routed/varying_input"
        assert str(classify_channel(induced_channel(joint, "z"))) == z_expected
        assert str(classify_channel(induced_channel(joint, "x"))) == x_expected

    def test_unknown_table_case(self):
        with pytest.raises(PreconditionError):
            table_case_strategy(4)

    def test_sending_x_leaves_depolarizing_channel(self, sig_racbox):
        joint = run_strategy(depolarizing_strategy(), sig_racbox)
        assert pr_success_probability(joint) == 1
        assert depolarizing_strategy().branch() == "unrouted"
        assert classify_channel(induced_channel(joint)) == ChannelClass(ChannelKind.DEPOLARIZING, HALF)

    def test_ignoring_the_box(self, sig_racbox):
        joint = run_strategy(ignore_box_strategy(), sig_racbox)
        assert pr_success_probability(joint) == HALF
        assert classify_channel(induced_channel(joint)).kind == ChannelKind.ZERO_CAPACITY

    def test_imperfect_strategy(self, sig_racbox):
        assert pr_success_probability(run_strategy(imperfect_strategy(), sig_racbox)) == Fraction(3, 4)

    def test_nonsignalling_racbox_sends_z_cleanly(self, ns_racbox):
        joint = run_strategy(nonsignalling_transmission_strategy(), ns_racbox)
        assert pr_success_probability(joint) == 1
        assert erasure_overlap(induced_channel(joint)) == 0

    def test_joint_is_normalized(self, sig_racbox):
        joint = run_strategy(table_case_strategy(2), sig_racbox)
        assert joint.names == JOINT_NAMES
        assert sum(joint.exact_table().values()) == 1

    def test_needs_a_racbox(self):
        with pytest.raises(SignatureError):
            run_strategy(fig3_strategy(), make_pr_box())

    def test_rejects_unknown_input_distribution(self, sig_racbox):
        with pytest.raises(SignatureError):
            run_strategy(fig3_strategy(), sig_racbox, {"w": (HALF, HALF)})


class TestStrategyTables:
    def test_indices_roundtrip(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            strategy = random_strategy(rng)
            assert DeterministicStrategy.from_indices(strategy.indices()) == strategy

    def test_identity_output_index(self):
        assert fig3_strategy().indices()[2] == 170

    def test_bad_tables(self):
        with pytest.raises(SignatureError):
            DeterministicStrategy(((0, 0),) * 3, (0,) * 8, (0, 1), (0,) * 4, (0,) * 16)
        with pytest.raises(SignatureError):
            DeterministicStrategy(((0, 0),) * 4, (0,) * 8, (0, 2), (0,) * 4, (0,) * 16)

    def test_routing(self):
        assert fig3_strategy().is_routed()
        assert not nonsignalling_transmission_strategy().is_routed()
        constant = DeterministicStrategy.from_rules(
            encode=lambda x, z: (z, x),
            message=lambda x, z, at: at,
            bob_input=lambda y: 0,
            bob_yprime=lambda y, m: m,
            bob_decode=lambda y, yt, bt, m: m,
        )
        assert constant.branch() == "routed/constant_input"

    def test_describe(self):
        view = fig3_strategy().describe()
        assert view["bob_input"] == "01"
        assert view["message_choice"] == "01010101"
        assert view["alice_encode"] == ["00", "10", "01", "11"]


class TestEnumeration:
    def test_space_sizes(self):
        assert strategy_space_size() == 2**38
        assert strategy_space_size(general_alice_output=True) == 2**46

    def test_pinned_components(self):
        pinned = {"alice_encode": 5, "message_choice": 170, "bob_yprime": 10, "bob_decode": 0}
        strategies = list(enumerate_strategies(fixed=pinned))
        assert len(strategies) == strategy_space_size(fixed=pinned) == 4
        assert len({s.indices() for s in strategies}) == 4
        assert {s.bob_input for s in strategies} == {(0, 0), (1, 0), (0, 1), (1, 1)}

    def test_general_output_range(self):
        ranges = component_ranges(general_alice_output=True)
        assert len(ranges["alice_output"]) == 256
        assert len(component_ranges()["alice_output"]) == 1

    def test_bad_pins(self):
        with pytest.raises(PreconditionError):
            component_ranges(fixed={"bob_input": 4})
        with pytest.raises(PreconditionError):
            component_ranges(fixed={"alice_decode": 0})


class TestMixtures:
    def test_composed_wiring_matches_mixture(self, sig_racbox):
        mixed = MixedStrategy((fig3_strategy(), imperfect_strategy()), (Fraction(1, 3), Fraction(2, 3)))
        composed = compose_mixed_strategy(mixed, sig_racbox)
        mixture = run_mixed_strategy(mixed, sig_racbox).marginal(JOINT_NAMES)
        assert composed.same_as(mixture)
        assert pr_success_probability(mixture) == Fraction(1, 3) + Fraction(2, 3) * Fraction(3, 4)

    def test_singleton_wiring(self, sig_racbox):
        strategy = table_case_strategy(3)
        composed = compose_mixed_strategy(MixedStrategy((strategy,), (Fraction(1),)), sig_racbox)
        assert composed.same_as(run_strategy(strategy, sig_racbox))
        assert strategy.to_wiring().shared[0].arity == 2

    def test_bad_weights(self):
        with pytest.raises(PreconditionError):
            MixedStrategy((fig3_strategy(),), (HALF,))
        with pytest.raises(PreconditionError):
            MixedStrategy((fig3_strategy(), imperfect_strategy()), (Fraction(1),))

    def test_decomposition_suites(self, sig_racbox):
        assert lemma2_suite(seed=11, random_mixtures=2, box=sig_racbox).passed
        mixed = MixedStrategy((fig3_strategy(), depolarizing_strategy()), (HALF, HALF))
        assert verify_lemma2_decomposition(mixed, sig_racbox).passed


class TestSuites:
    def test_excluded_pairs(self, sig_racbox, routed_family):
        family = routed_family.subset(routed_family.output_ignores_z())
        report = verify_lemma3(family, sig_racbox)
        assert report.passed
        assert int(report.counts["family"]) == len(family) > 0

    def test_classical_chsh(self, sig_racbox):
        report = verify_chsh_classical(sig_racbox)
        assert report.passed
        assert report.info[0].value == pytest.approx(0.75)

    def test_routed_family_members_are_perfect(self, sig_racbox, routed_family):
        for k in range(0, len(routed_family), max(1, len(routed_family) // 8)):
            strategy = routed_family.strategy(k)
            assert strategy.is_routed()
            assert pr_success_probability(run_strategy(strategy, sig_racbox)) == 1


class TestSweep:
    def test_fig3_prefix_is_found(self, sig_racbox):
        encoding = fig3_strategy().indices()[0]
        result = sweep_perfect_strategies(sig_racbox, HALF, False, encodings=[encoding], progress=False)
        assert result.perfect_strategies > 0
        assert not result.complete
        classes = {
            (result.branch(key), str(classify_channel(result.channels(key)[0]))) for key in result.entries
        }
        assert ("routed/varying_input", "erasure(1/2)") in classes

    def test_threads_match_serial(self, sig_racbox):
        encodings = range(0, 256, 9)
        serial = sweep_perfect_strategies(sig_racbox, HALF, False, encodings=encodings, progress=False)
        threaded = sweep_perfect_strategies(
            sig_racbox, HALF, False, parallelism=3, encodings=encodings, progress=False
        )
        assert threaded.entries == serial.entries
        assert threaded.perfect_strategies == serial.perfect_strategies

    def test_overlapping_merge(self, sig_racbox):
        part = sweep_perfect_strategies(sig_racbox, HALF, False, encodings=[0], progress=False)
        with pytest.raises(PreconditionError):
            part.merge(part)

    def test_bad_settings(self, sig_racbox):
        with pytest.raises(PreconditionError):
            sweep_perfect_strategies(sig_racbox, Fraction(2), progress=False)
        with pytest.raises(PreconditionError):
            sweep_perfect_strategies(sig_racbox, parallelism=0, progress=False)

    def test_representatives_decode_perfectly(self, sig_racbox):
        encoding = table_case_strategy(2).indices()[0]
        result = sweep_perfect_strategies(sig_racbox, HALF, False, encodings=[encoding], progress=False)
        for entry in list(result.entries.values())[:5]:
            strategy = perfect_decoder(entry.representative, sig_racbox)
            assert pr_success_probability(run_strategy(strategy, sig_racbox)) == 1

    def test_prefix_without_perfect_decoder(self, sig_racbox):
        prefix = ignore_box_strategy().indices()[:5]
        with pytest.raises(PreconditionError):
            perfect_decoder(prefix, sig_racbox)


@pytest.mark.slow
class TestExhaustive:
    @pytest.fixture(scope="class")
    def full_sweep(self):
        return sweep_perfect_strategies(make_signalling_racbox(), HALF, True, progress=False)

    def test_every_perfect_strategy_is_erasure_degraded(self, full_sweep):
        report = verify_theorem1(sweep=full_sweep, contrast=False)
        assert report.passed, [c.name for c in report.checks if not c.passed]
        assert report.counts["examined_strategies"] == str(2**46)

    def test_channel_pair_table(self, full_sweep):
        assert verify_table2(full_sweep).passed

    def test_nonsignalling_racbox_has_no_erasure_bound(self):
        sweep = sweep_perfect_strategies(make_nonsignalling_racbox(), HALF, False, progress=False)
        noiseless = [k for k in sweep.entries if erasure_overlap(sweep.channels(k)[0]) == 0]
        assert noiseless
