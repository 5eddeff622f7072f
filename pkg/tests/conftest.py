"""Shared fixtures and hypothesis profiles."""

from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from positroid_braids.braid_core import Permutation, max_grassmannian
from positroid_braids.const import INTRO_K, INTRO_N, INTRO_U, INTRO_W
from positroid_braids.positroid_data import PositroidPair

settings.register_profile(
    "fast",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("debugger", max_examples=5, deadline=None, report_multiple_bugs=False)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture
def intro_pair() -> PositroidPair:
    """The Gr(3,7) pair used in the worked example."""
    return PositroidPair(INTRO_K, INTRO_N, Permutation(INTRO_U), Permutation(INTRO_W))


@pytest.fixture
def markov44_pair() -> PositroidPair:
    """Full 4x2 box with u = s3 s4 s2."""
    return PositroidPair(4, 6, Permutation.from_word(6, [3, 4, 2]), max_grassmannian(4, 6))
