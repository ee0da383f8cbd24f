from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import PreconditionError, SignatureError
from core.infotheory import (
    JointDistribution,
    entropy,
    guessed_information,
    joint_from_box,
    mutual_information,
    random_joints,
    tripartite_information,
)
from core.infotheory.suites import lemma4_suite, theorem3_suite, theorem4_suite
from core.infotheory.verify import (
    assumptions_joint,
    chsh_guessed,
    lemma5_suite,
    verify_lemma4,
    verify_lemma5,
    verify_theorem3,
    verify_theorem4,
)
from core.strategies import fig3_strategy, ignore_box_strategy, imperfect_strategy, run_strategy

NAMES = ("S", "T", "U", "V")
TOL = 1e-9

four_bit_joints = (
    st.lists(st.integers(min_value=0, max_value=30), min_size=16, max_size=16)
    .filter(lambda w: sum(w) > 0)
    .map(lambda w: JointDistribution(NAMES, np.array(w, dtype=np.int64).reshape(2, 2, 2, 2)))
)


def copy_joint() -> JointDistribution:
    """S uniform and T = S."""
    return JointDistribution.from_rows(("S", "T"), (2, 2), [((0, 0), Fraction(1, 2)), ((1, 1), Fraction(1, 2))])


class TestJointDistribution:
    def test_marginal_order(self):
        d = JointDistribution.from_rows(("a", "b"), (2, 3), [((0, 2), Fraction(1, 4)), ((1, 0), Fraction(3, 4))])
        flipped = d.marginal(("b", "a"))
        assert flipped.shape == (3, 2)
        assert flipped.exact_table() == {(2, 0): Fraction(1, 4), (0, 1): Fraction(3, 4)}

    def test_condition_on_impossible_event(self):
        with pytest.raises(PreconditionError):
            copy_joint().condition({"S": 0, "T": 1})

    def test_condition_out_of_range(self):
        with pytest.raises(SignatureError):
            copy_joint().condition({"S": 2})

    def test_derive(self):
        d = copy_joint().derive("P", lambda s, t: s ^ t, ("S", "T"))
        assert d.probability(lambda p: p == 0, ("P",)) == 1
        with pytest.raises(SignatureError):
            copy_joint().derive("Q", lambda s: s + 1, ("S",))

    def test_mixture(self):
        d = JointDistribution.mixture("k", [copy_joint(), copy_joint()], [Fraction(1, 3), Fraction(2, 3)])
        assert d.names == ("k", "S", "T")
        assert d.marginal(("S", "T")).same_as(copy_joint())
        with pytest.raises(PreconditionError):
            JointDistribution.mixture("k", [copy_joint()], [Fraction(1, 2)])

    def test_independence(self):
        uniform = JointDistribution(("S", "T"), np.ones((2, 2), dtype=np.int64))
        assert uniform.is_independent((("S",), ("T",)))
        assert not copy_joint().is_independent((("S",), ("T",)))

    def test_unknown_variable(self):
        with pytest.raises(SignatureError):
            copy_joint().marginal(("W",))

    def test_joint_from_box(self, pr_box):
        d = joint_from_box(pr_box)
        assert d.names == ("x", "y", "a", "b")
        assert d.probability(lambda x, y, a, b: (a ^ b) == (x & y), ("x", "y", "a", "b")) == 1


class TestMeasures:
    def test_copied_bit(self):
        d = copy_joint()
        assert entropy(d, "S") == pytest.approx(1.0)
        assert entropy(d, "S", "T") == pytest.approx(0.0)
        assert mutual_information(d, "S", "T") == pytest.approx(1.0)
        assert guessed_information(d, "T", "S") == 1

    def test_guessing_without_information(self):
        uniform = JointDistribution(("S", "T"), np.ones((2, 2), dtype=np.int64))
        assert guessed_information(uniform, "T", "S") == Fraction(1, 2)

    def test_overlapping_sets(self):
        with pytest.raises(PreconditionError):
            mutual_information(copy_joint(), "S", ("S", "T"))

    def test_batched_matches_items(self):
        batch = random_joints(np.random.default_rng(5), NAMES, 6)
        values = mutual_information(batch, "S", ("T", "U"), "V")
        assert values.shape == (6,)
        for i in range(6):
            assert values[i] == pytest.approx(mutual_information(batch.batch_item(i), "S", ("T", "U"), "V"))

    def test_random_joints_have_mass(self):
        batch = random_joints(np.random.default_rng(0), NAMES, 50, max_weight=1)
        assert np.all(batch.total() > 0)

    @given(four_bit_joints)
    @settings(max_examples=60, deadline=None)
    def test_shannon_properties(self, d):
        assert mutual_information(d, "S", "T", "V") >= -TOL
        assert mutual_information(d, "S", "T") == pytest.approx(mutual_information(d, "T", "S"), abs=TOL)
        assert entropy(d, "S", ("T", "U")) <= entropy(d, "S") + TOL
        chain = mutual_information(d, "S", "T") + mutual_information(d, "S", "U", "T")
        assert mutual_information(d, "S", ("T", "U")) == pytest.approx(chain, abs=TOL)

    @given(four_bit_joints)
    @settings(max_examples=60, deadline=None)
    def test_one_bit_wire_inequality(self, d):
        report = verify_lemma5(d, "S", "T", "U", "V", tolerance=TOL, trace=True)
        assert report.satisfied
        rhs = mutual_information(d, "S", "U", "V") + mutual_information(d, "T", ("S", "U"), "V")
        assert tripartite_information(d, "S", "T", "U", "V") == pytest.approx(rhs, abs=TOL)
        assert set(report.terms) >= {"lhs", "rhs"}


class TestStrategyBounds:
    @pytest.fixture
    def routing(self, sig_racbox):
        return assumptions_joint(run_strategy(fig3_strategy(), sig_racbox))

    def test_assumptions_joint_names(self, routing):
        assert routing.names == ("x", "z", "y", "s", "y_tilde", "b_tilde", "a", "b")

    def test_perfect_guesses(self, routing):
        report = verify_lemma4(routing, trace=True)
        assert report.applicable and report.satisfied
        assert report.terms["H(a|y~,s,y=0)"] == pytest.approx(report.terms["I(b~:a|y~,s,y=0)"])

    def test_imperfect_strategy_is_not_applicable(self, sig_racbox):
        report = verify_lemma4(assumptions_joint(run_strategy(imperfect_strategy(), sig_racbox)))
        assert not report.applicable
        assert report.value > 0

    def test_half_bit_about_z(self, routing):
        report = verify_theorem3(routing)
        assert report.satisfied
        assert report.value == pytest.approx(0.5)

    def test_discarding_the_box_output(self, sig_racbox):
        joint = assumptions_joint(run_strategy(ignore_box_strategy(), sig_racbox))
        assert verify_theorem3(joint).value == pytest.approx(0.0, abs=TOL)

    def test_tradeoff_is_tight_for_routing(self, routing):
        report = verify_theorem4(routing, trace=True)
        assert report.satisfied
        assert report.slack == pytest.approx(0.0, abs=1e-9)
        assert "H(b~|y~,s,y)" in report.terms

    def test_tradeoff_needs_independent_shared_variable(self, sig_racbox):
        joint = assumptions_joint(run_strategy(fig3_strategy(), sig_racbox), shared=("z",))
        with pytest.raises(PreconditionError):
            verify_theorem4(joint)

    def test_guessed_chsh_with_box(self, routing):
        assert chsh_guessed(routing).value == pytest.approx(1.0)

    def test_family_bounds(self, routed_family):
        assert verify_theorem3(routed_family.joint).satisfied
        assert verify_theorem4(routed_family.joint).satisfied
        assert verify_lemma4(routed_family.joint).satisfied


class TestSuites:
    def test_wire_inequality_suite(self):
        report = lemma5_suite(samples=400, seed=3)
        assert report.passed
        assert report.counts == {"samples": "400", "seed": "3"}

    def test_wire_inequality_without_samples(self):
        assert lemma5_suite(samples=0).passed

    def test_guess_suite(self, routed_family, sig_racbox):
        assert lemma4_suite(routed_family, sig_racbox).passed

    def test_tradeoff_suite(self, routed_family, sig_racbox):
        assert theorem4_suite(routed_family, sig_racbox).passed

    def test_information_suite(self, routed_family, sig_racbox):
        report = theorem3_suite(routed_family, sig_racbox, seed=3, mixtures=4)
        assert report.passed
        assert report.notes
