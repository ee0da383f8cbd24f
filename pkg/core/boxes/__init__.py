"""Bipartite boxes as exact conditional-probability tables."""

from .builders import (
    make_independent_box,
    make_local_box,
    make_nonsignalling_racbox,
    make_pr_box,
    make_rac_box,
    make_signalling_racbox,
    local_deterministic_boxes,
)
from .checks import (
    chsh_score,
    check_nonsignalling,
    is_perfect_rac,
    is_racbox,
    pr_win_probability,
    satisfies_pr_correlations,
    verify_lemma1,
)
from .codec import dumps_box, loads_box, read_box_file, write_box_file
from .models import BipartiteBox, SignallingVerdict, SignallingWitness, VariableSpec, bits

__all__ = [
    "BipartiteBox",
    "SignallingVerdict",
    "SignallingWitness",
    "VariableSpec",
    "bits",
    "chsh_score",
    "check_nonsignalling",
    "dumps_box",
    "is_perfect_rac",
    "is_racbox",
    "loads_box",
    "local_deterministic_boxes",
    "make_independent_box",
    "make_local_box",
    "make_nonsignalling_racbox",
    "make_pr_box",
    "make_rac_box",
    "make_signalling_racbox",
    "pr_win_probability",
    "read_box_file",
    "satisfies_pr_correlations",
    "verify_lemma1",
    "write_box_file",
]
