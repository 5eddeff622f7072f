"""Tests for the checks and the check runner."""

from __future__ import annotations

import asyncio

import pytest

from positroid_braids.braid_core import BraidWord
from positroid_braids.checks import (
    BrickStrataCheck,
    IntroReproductionCheck,
    RichardsonVsJugglingCheck,
    TraceReplayCheck,
)
from positroid_braids.config import Config
from positroid_braids.const import (
    CHECK_TYPES,
    STATUS_DISABLED,
    STATUS_ERROR,
    STATUS_FAILED,
    STATUS_PASSED,
)
from positroid_braids.rewriting import free_reduce
from positroid_braids.runner import CheckRunner, all_passed

TIGHT_SEARCH = {"search": {"max_states": 2000, "max_extra_length": 0}}


def _only(name, **overrides):
    checks = {check.replace("-", "_"): {"enabled": False} for check in CHECK_TYPES}
    checks[name] = {"enabled": True, **overrides}
    return Config(checks=checks)


def test_default_config_enables_intro_only():
    runner = CheckRunner(Config())
    assert runner.get_enabled_checks() == ["intro"]


def test_disabled_checks_are_reported():
    config = Config(checks={"intro": {"enabled": False}})
    results = CheckRunner(config).run()
    assert set(results) == set(CHECK_TYPES)
    assert all(r == {"status": STATUS_DISABLED} for r in results.values())
    assert all_passed(results)


def test_trace_replay_passes():
    trace = free_reduce(BraidWord(3, (1, -1, 2, 2, -2)))
    results = CheckRunner(_only("trace", instance={"trace": trace.to_json()})).run()
    report = results["trace"]
    assert report["status"] == STATUS_PASSED
    assert report["details"]["end"] == "n=3: s2"
    assert all_passed(results)


def test_broken_trace_fails():
    data = free_reduce(BraidWord(2, (1, -1, 1))).to_json()
    data["end"] = "n=2: s1 s1"
    report = CheckRunner(_only("trace", instance={"trace": data})).run()["trace"]
    assert report["status"] == STATUS_FAILED
    assert report["first_failure"] == "replay"


def test_errors_stay_inside_their_check(tmp_path):
    config = _only("trace", instance={"path": str(tmp_path / "missing.json")})
    results = CheckRunner(config).run()
    assert results["trace"]["status"] == STATUS_ERROR
    assert "timestamp" in results["trace"]
    assert results["intro"] == {"status": STATUS_DISABLED}
    assert not all_passed(results)


def test_bad_instance_is_an_error():
    check = RichardsonVsJugglingCheck({"instance": {"k": "x"}})
    assert asyncio.run(check.get_data())["status"] == STATUS_ERROR


def test_richardson_vs_juggling_on_small_grassmannian():
    check = RichardsonVsJugglingCheck({"instance": {"k": 1, "n": 3}, "q": [2]})
    report = asyncio.run(check.get_data())
    assert report["status"] == STATUS_PASSED
    assert len(report["details"]["comparisons"]) == len(report["checks"])


def test_brick_strata_with_expected_polynomial():
    check = BrickStrataCheck(
        {"instance": {"word": "n=3: s1 s2 s1 s2 s1", "expected": "q**2 + 3*q + 1"}, "q": [2, 3]}
    )
    report = asyncio.run(check.get_data())
    assert report["status"] == STATUS_PASSED
    assert [c["total"] for c in report["details"]["counts"]] == [11, 19]


def test_brick_strata_with_wrong_expectation():
    check = BrickStrataCheck({"instance": {"word": "n=3: s1 s2 s2 s1 s2", "expected": "q**2 + 3*q + 1"}})
    report = asyncio.run(check.get_data())
    assert report["status"] == STATUS_FAILED
    assert report["first_failure"] == "expected q=2"


def test_corrupted_window_fails_on_affine():
    check = IntroReproductionCheck({"f": [3, 5, 8, 6, 7, 9, 11]}, Config(**TIGHT_SEARCH))
    report = asyncio.run(check.get_data())
    assert report["status"] == STATUS_FAILED
    assert report["first_failure"] == "affine"


def test_invalid_window_is_an_error():
    check = IntroReproductionCheck({"f": [3, 5, 8, 6, 7, 11, 10]})
    assert asyncio.run(check.get_data())["status"] == STATUS_ERROR


def test_trace_check_rejects_bad_instance():
    check = TraceReplayCheck({"instance": {"word": "n=2: s1"}})
    assert asyncio.run(check.get_data())["status"] == STATUS_ERROR


@pytest.mark.slow
def test_intro_reproduction():
    report = CheckRunner(Config()).run()["intro"]
    checks = report["checks"]
    for name in ("affine", "richardson", "juggling", "juggling_routes", "matrix", "rank_matrix", "length_formula"):
        assert checks[name], name
    assert report["details"]["length"] == 7
