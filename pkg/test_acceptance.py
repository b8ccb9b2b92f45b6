#!/usr/bin/env python3
"""
Test acceptance runner - individual checks, report shape, the fast level end to end
"""

import pytest

from gfemod.core.acceptance import CHECKS, LEVELS, run_acceptance, run_check


def test_check_names_are_unique():
    names = [name for name, _, _ in CHECKS]
    assert len(names) == len(set(names)) == 15


@pytest.mark.parametrize(
    "name", ["curve_matrix", "formal_log", "newton_polygon", "known_solutions", "x013_jmap", "good_j", "tate_module"]
)
def test_quick_checks_pass(name, settings):
    outcome = run_check(name, "fast", settings)
    assert outcome.ok, outcome.to_json()
    assert outcome.error is None


def test_unknown_check_and_level(settings):
    with pytest.raises(KeyError):
        run_check("no_such_check", "fast", settings)
    with pytest.raises(ValueError):
        run_check("good_j", "thorough", settings)


def test_report_keeps_check_order(settings):
    report = run_acceptance("fast", ["good_j", "formal_log"], settings)
    assert [o.name for o in report.outcomes] == ["formal_log", "good_j"]
    assert report.passed
    assert report.to_json()["failures"] == []


def test_failures_are_listed(settings):
    tight = settings.override(brute_force_bound=5)
    report = run_acceptance("fast", ["normalizers"], tight)
    assert not report.passed
    assert report.failures == ["normalizers"]
    assert "BruteForceBoundExceeded" in report.outcomes[0].error


@pytest.mark.slow
def test_fast_level_passes(settings):
    assert LEVELS[0] == "fast"
    report = run_acceptance("fast", settings=settings)
    assert report.passed, report.failures
