"""Strategies for a racbox plus one communicated bit; suites live in `core.strategies.verify`."""

from core.channels import ChannelClass, ChannelKind, ClassicalChannel, classify_channel, is_postprocessing_of_erasure

from .catalog import (
    depolarizing_strategy,
    fig3_strategy,
    ignore_box_strategy,
    imperfect_strategy,
    nonsignalling_transmission_strategy,
    table_case_strategy,
)
from .enumerate import component_ranges, enumerate_strategies, strategy_space_size
from .family import RoutedFamily, routed_perfect_family
from .models import DeterministicStrategy, MixedStrategy
from .run import (
    JOINT_NAMES,
    compose_mixed_strategy,
    induced_channel,
    pr_success_probability,
    run_mixed_strategy,
    run_strategy,
)
from .sweep import SweepResult, perfect_decoder, sweep_perfect_strategies

__all__ = [
    "JOINT_NAMES",
    "ChannelClass",
    "ChannelKind",
    "ClassicalChannel",
    "DeterministicStrategy",
    "MixedStrategy",
    "RoutedFamily",
    "SweepResult",
    "classify_channel",
    "component_ranges",
    "compose_mixed_strategy",
    "depolarizing_strategy",
    "enumerate_strategies",
    "fig3_strategy",
    "ignore_box_strategy",
    "imperfect_strategy",
    "induced_channel",
    "is_postprocessing_of_erasure",
    "nonsignalling_transmission_strategy",
    "perfect_decoder",
    "pr_success_probability",
    "routed_perfect_family",
    "run_mixed_strategy",
    "run_strategy",
    "strategy_space_size",
    "sweep_perfect_strategies",
    "table_case_strategy",
]
