"""Shared fixtures for the racbox test-suite."""

import os
from fractions import Fraction

import pytest

from core.boxes import make_nonsignalling_racbox, make_pr_box, make_rac_box, make_signalling_racbox
from core.settings.types import RunConfig
from core.strategies.family import routed_perfect_family


@pytest.fixture
def pr_box():
    return make_pr_box()


@pytest.fixture
def ns_racbox():
    return make_nonsignalling_racbox()


@pytest.fixture
def sig_racbox():
    return make_signalling_racbox()


@pytest.fixture
def rac_box():
    return make_rac_box()


@pytest.fixture(scope="session")
def routed_family():
    """Routed perfect strategies on the signalling racbox, uniform y."""
    return routed_perfect_family(make_signalling_racbox(), Fraction(1, 2), True)


@pytest.fixture
def run_config():
    return RunConfig()


@pytest.fixture(autouse=True)
def _no_racbox_env(monkeypatch):
    """Keep RACBOX_* variables from the shell out of config tests."""
    for name in list(os.environ):
        if name.startswith("RACBOX_"):
            monkeypatch.delenv(name)
