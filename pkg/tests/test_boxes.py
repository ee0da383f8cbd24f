from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.boxes import (
    BipartiteBox,
    bits,
    check_nonsignalling,
    chsh_score,
    dumps_box,
    is_perfect_rac,
    is_racbox,
    loads_box,
    local_deterministic_boxes,
    make_independent_box,
    make_signalling_racbox,
    read_box_file,
    satisfies_pr_correlations,
    verify_lemma1,
    write_box_file,
)
from core.errors import BoxValidationError, CodecError, PreconditionError, SignatureError

HALF = Fraction(1, 2)
BIT = st.integers(min_value=0, max_value=1)


def x_y(v):
    return v["x1"] if v["y"] else v["x0"]


class TestPRBox:
    def test_pr_correlations(self, pr_box):
        assert satisfies_pr_correlations(pr_box)
        assert chsh_score(pr_box) == 1

    def test_uniform_marginals(self, pr_box):
        for x in (0, 1):
            for y in (0, 1):
                assert pr_box.alice_marginal({"x": x, "y": y}) == {(0,): HALF, (1,): HALF}
                assert pr_box.bob_marginal({"x": x, "y": y}) == {(0,): HALF, (1,): HALF}

    def test_nonsignalling(self, pr_box):
        verdict = check_nonsignalling(pr_box)
        assert verdict.nonsignalling
        assert verdict.witness is None

    def test_independent_box_fails_pr(self):
        box = make_independent_box()
        assert not satisfies_pr_correlations(box)
        assert chsh_score(box) == HALF

    def test_local_boxes_reach_three_quarters(self):
        scores = [chsh_score(box) for box in local_deterministic_boxes()]
        assert len(scores) == 16
        assert max(scores) == Fraction(3, 4)
        assert all(score <= Fraction(3, 4) for score in scores)


class TestRacboxes:
    def test_nonsignalling_racbox(self, ns_racbox):
        assert is_racbox(ns_racbox)
        assert check_nonsignalling(ns_racbox).nonsignalling

    def test_anti_rac_when_a_differs(self, ns_racbox):
        for inputs, _ in ns_racbox.rows():
            hit = ns_racbox.conditional(
                lambda v: v["b"] == x_y(v), lambda v: v["a"] != v["y_prime"], inputs
            )
            assert hit == 0

    def test_signalling_racbox_signals_alice_to_bob(self, sig_racbox):
        verdict = check_nonsignalling(sig_racbox)
        assert verdict.a_to_b
        assert not verdict.b_to_a
        assert verdict.witness.direction == "a_to_b"
        assert is_racbox(sig_racbox)

    @pytest.mark.parametrize("x0,x1", [(0, 0), (0, 1), (1, 0), (1, 1)])
    def test_signalling_racbox_reveals_x0_three_quarters(self, sig_racbox, x0, x1):
        inputs = {"x0": x0, "x1": x1, "y": 0, "y_prime": 0}
        assert sig_racbox.probability(lambda v: v["b"] == v["x0"], inputs) == Fraction(3, 4)

    def test_racbox_plus_message_is_rac(self, sig_racbox):
        # a fed into y' always lands in the RAC branch
        for inputs, _ in sig_racbox.rows():
            hit = sig_racbox.conditional(lambda v: v["b"] == x_y(v), lambda v: v["a"] == v["y_prime"], inputs)
            assert hit == 1

    def test_rac_box(self, rac_box):
        assert is_perfect_rac(rac_box)
        assert check_nonsignalling(rac_box).a_to_b

    def test_wrong_signature(self, pr_box, ns_racbox):
        with pytest.raises(SignatureError):
            is_racbox(pr_box)
        with pytest.raises(SignatureError):
            satisfies_pr_correlations(ns_racbox)
        with pytest.raises(SignatureError):
            is_perfect_rac(ns_racbox)

    def test_bob_to_alice_signalling_is_not_a_racbox(self):
        def rule(v):
            yield Fraction(1), {"a": v["y"], "b": x_y(v)}

        box = BipartiteBox.from_rule(bits("x0", "x1"), bits("a"), bits("y", "y_prime"), bits("b"), rule)
        with pytest.raises(PreconditionError):
            is_racbox(box)

    def test_constant_output_is_not_a_racbox(self):
        def rule(v):
            for a in (0, 1):
                yield HALF, {"a": a, "b": 0}

        box = BipartiteBox.from_rule(bits("x0", "x1"), bits("a"), bits("y", "y_prime"), bits("b"), rule)
        assert not check_nonsignalling(box).b_to_a
        assert is_racbox(box) is False

    def test_rac_only_when_y_prime_equals_y(self):
        # b ignores a: right when y' = y, flipped otherwise
        def rule(v):
            b = x_y(v) if v["y_prime"] == v["y"] else x_y(v) ^ 1
            for a in (0, 1):
                yield HALF, {"a": a, "b": b}

        box = BipartiteBox.from_rule(bits("x0", "x1"), bits("a"), bits("y", "y_prime"), bits("b"), rule)
        assert not check_nonsignalling(box).b_to_a
        assert is_racbox(box) is False
        inputs = {"x0": 0, "x1": 1, "y": 1, "y_prime": 1}
        assert box.conditional(lambda v: v["b"] == 1, lambda v: v["a"] == 1, inputs) == 1

    def test_anti_rac_is_the_only_nonsignalling_racbox(self):
        report = verify_lemma1()
        assert report.passed
        assert report.counts == {"candidates": "65536", "evaluated": "64", "nonsignalling": "1"}
        factorized = next(c for c in report.checks if c.name == "per-setting candidates factorized")
        assert factorized.passed and factorized.value == "65536"

    @given(x0=BIT, x1=BIT, y=BIT, y_prime=BIT)
    @settings(max_examples=50)
    def test_alice_marginal_ignores_bob_inputs(self, x0, x1, y, y_prime):
        box = make_signalling_racbox()
        reference = box.alice_marginal({"x0": x0, "x1": x1, "y": 0, "y_prime": 0})
        assert box.alice_marginal({"x0": x0, "x1": x1, "y": y, "y_prime": y_prime}) == reference


class TestBoxTables:
    def test_unnormalized_row(self):
        table = {(x, y): {(0, 0): HALF} for x in (0, 1) for y in (0, 1)}
        with pytest.raises(BoxValidationError):
            BipartiteBox(bits("x"), bits("a"), bits("y"), bits("b"), table)

    def test_missing_row(self):
        table = {(0, 0): {(0, 0): Fraction(1)}}
        with pytest.raises(BoxValidationError):
            BipartiteBox(bits("x"), bits("a"), bits("y"), bits("b"), table)

    def test_duplicate_names(self):
        with pytest.raises(SignatureError):
            BipartiteBox(bits("x"), bits("x"), bits("y"), bits("b"), {})

    def test_average_and_marginalize(self, ns_racbox):
        averaged = ns_racbox.average_inputs({"x0": (HALF, HALF)})
        assert averaged.input_names == ("x1", "y", "y_prime")
        dropped = ns_racbox.marginalize_outputs(["a"])
        for inputs, row in dropped.rows():
            assert sum(row.values()) == 1
            assert row == {(0,): HALF, (1,): HALF}

    def test_relabel(self, pr_box):
        renamed = pr_box.relabel({"x": "u", "b": "v"})
        assert renamed.signature() == {
            "alice_inputs": ("u",),
            "alice_outputs": ("a",),
            "bob_inputs": ("y",),
            "bob_outputs": ("v",),
        }
        assert renamed.table == pr_box.table


class TestBoxCodec:
    def test_roundtrip_named_boxes(self, pr_box, ns_racbox, sig_racbox, rac_box):
        for box in (pr_box, ns_racbox, sig_racbox, rac_box):
            assert loads_box(dumps_box(box)) == box

    def test_text_format(self, pr_box):
        text = dumps_box(pr_box)
        assert text.splitlines()[0] == "box v1"
        assert "1 1 -> 0 1 1/2 | 1 0 1/2" in text

    def test_file_roundtrip(self, tmp_path, sig_racbox):
        path = tmp_path / "sig.box"
        write_box_file(path, sig_racbox)
        assert read_box_file(path) == sig_racbox

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(CodecError) as info:
            read_box_file(tmp_path / "absent.box")
        assert info.value.context["path"] == str(tmp_path / "absent.box")
        assert info.value.line is None

    def test_malformed_entry_reports_line(self, pr_box):
        lines = dumps_box(pr_box).splitlines()
        lines[6] = "0 0 -> 0 0 1/2 | 1 1"
        with pytest.raises(CodecError) as info:
            loads_box("\n".join(lines))
        assert info.value.line == 7

    def test_bad_header(self):
        with pytest.raises(CodecError):
            loads_box("box v2\n")

    def test_unnormalized_text(self, pr_box):
        text = dumps_box(pr_box).replace("0 0 -> 0 0 1/2 | 1 1 1/2", "0 0 -> 0 0 1/2")
        with pytest.raises(BoxValidationError):
            loads_box(text)
