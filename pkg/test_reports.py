"""CSV report tests."""
from __future__ import annotations

from bench import BenchMeasurement
from primes import p_of_q
from reports import BENCH_COLUMNS, SCAN_COLUMNS, bench_csv, render_csv, scan_csv, write_report


def test_scan_header_and_rows():
    text = scan_csv([p_of_q(q) for q in (2, 3, 4)])
    assert text == "q,phi_q,P_q,ratio_num,ratio_den\n2,1,3,3,2\n3,2,7,7,12\n4,2,5,5,16\n"


def test_empty_scan_is_header_only():
    assert scan_csv([]) == ",".join(SCAN_COLUMNS) + "\n"


def test_bench_formatting():
    rows = [BenchMeasurement(1024, "fft", 0.0123456789, 5000, 0, 0)]
    lines = bench_csv(rows).splitlines()
    assert lines[0] == ",".join(BENCH_COLUMNS)
    assert lines[1] == "1024,fft,0.012346,5000,0,0"


def test_extra_keys_ignored():
    assert render_csv(("a",), [{"a": 1, "b": 2}]) == "a\n1\n"


def test_write_report_creates_directories(tmp_path):
    target = write_report(tmp_path / "deep" / "dir" / "r.csv", "a\n1\n")
    assert target.read_text(encoding="utf-8") == "a\n1\n"
