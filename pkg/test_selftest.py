"""Self-test runner tests on a reduced suite set."""
from __future__ import annotations

import pytest

import selftest
from selftest import Checker, run_selftest


@pytest.fixture
def small_suites(monkeypatch):
    suites = {name: selftest.SUITES[name] for name in ("bigint", "fp", "dft", "bivariate")}
    monkeypatch.setattr(selftest, "SUITES", suites)
    return suites


def test_quick_passes(small_suites):
    report = run_selftest("quick", seed=0)
    assert report.passed
    assert [r.name for r in report.results] == list(small_suites)
    assert report.render().splitlines()[-1] == "4/4 suites passed"


def test_report_is_deterministic(small_suites):
    assert run_selftest("quick", seed=5).render() == run_selftest("quick", seed=5).render()


def test_injected_fault_names_suite(small_suites):
    report = run_selftest("quick", seed=0, inject_fault="fp")
    assert not report.passed
    assert report.failed == ["fp"]
    assert "injected fault" in report.results[1].detail


def test_unknown_level_and_suite(small_suites):
    with pytest.raises(ValueError):
        run_selftest("slow")
    with pytest.raises(ValueError):
        run_selftest("quick", inject_fault="nope")


def test_checker_counts_and_reports():
    check = Checker()
    check.expect(1, 1, "one")
    assert check.checks == 1
    with pytest.raises(AssertionError, match="two"):
        check.expect(2, 3, "two")


def test_every_module_has_a_suite():
    assert set(selftest.SUITES) >= {"bigint", "primes", "fp", "dft", "bluestein", "bivariate", "transform", "intmul"}


def test_crashing_suite_is_reported_and_later_suites_still_run(monkeypatch):
    def broken(check, rng, full):
        check.expect(1, 1, "first")
        raise TypeError("missing argument")

    suites = {"broken": broken, "fp": selftest.SUITES["fp"]}
    monkeypatch.setattr(selftest, "SUITES", suites)
    report = run_selftest("quick", seed=0)
    assert report.failed == ["broken"]
    assert report.results[0].checks == 1
    assert report.results[0].detail == "TypeError: missing argument"
    assert report.results[1].passed
    assert report.render().splitlines()[-1] == "1/2 suites passed"
