"""Results store tests against a throwaway SQLite file."""
from __future__ import annotations

import pytest

import result_store
from bench import BenchMeasurement
from database import make_engine
from errors import NotFound
from primes import ap_scan
from result_store import ResultStore


@pytest.fixture
def store(tmp_path):
    return ResultStore(make_engine(f"sqlite:///{tmp_path / 'results.db'}"))


def test_cached_find_p0_searches_once(store, monkeypatch):
    assert store.cached_find_p0(10).p == 12289

    def fail(*args, **kwargs):
        raise AssertionError("search repeated")

    monkeypatch.setattr(result_store, "find_p0", fail)
    assert store.cached_find_p0(10).a == 12
    assert store.cached_primes()[0]["a"] == 12


def test_cached_a_above_limit_is_not_found(store):
    store.cached_find_p0(10)
    with pytest.raises(NotFound):
        store.cached_find_p0(10, a_max=5)


def test_search_failure_is_not_cached(store):
    with pytest.raises(NotFound):
        store.cached_find_p0(3, a_max=1)
    assert store.cached_find_p0(3).a == 2
    assert [row["m"] for row in store.cached_primes()] == [3]


def test_scan_run_round_trip(store):
    summary = ap_scan(range(2, 9))
    run_id = store.record_scan(summary, {"q_max": 8})
    run = store.load_run(run_id)
    assert run["kind"] == "scan"
    assert [row["q"] for row in run["rows"]] == list(range(2, 9))
    assert run["rows"][0] == {"q": 2, "r": 1, "P_q": 3, "phi_q": 1, "ratio_num": 3, "ratio_den": 2}
    assert "q=2" in run["summary"]


def test_bench_run_round_trip(store):
    rows = [BenchMeasurement(64, "karatsuba", 0.5, 0, 0, 0), BenchMeasurement(64, "fft", 0.25, 900, 0, 0)]
    run = store.load_run(store.record_bench(rows))
    assert [row["engine"] for row in run["rows"]] == ["karatsuba", "fft"]
    assert run["rows"][1]["fp_mults"] == 900


def test_unknown_run(store):
    with pytest.raises(NotFound):
        store.load_run("missing")
