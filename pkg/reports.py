"""CSV output for scans and benchmarks.

Ratios are written as exact numerator/denominator pairs; only bench timings
are floats.
"""
from __future__ import annotations

import csv
import io
import logging
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

LOGGER = logging.getLogger(__name__)

SCAN_COLUMNS = ("q", "phi_q", "P_q", "ratio_num", "ratio_den")
BENCH_COLUMNS = ("bits", "engine", "seconds", "fp_mults", "recursions", "layers")


def _format(value: object) -> object:
    if isinstance(value, float):
        return f"{value:.6f}"
    return value


def render_csv(columns: Sequence[str], rows: Iterable[Mapping[str, object]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _format(row[key]) for key in columns})
    return buffer.getvalue()


def scan_csv(records: Iterable) -> str:
    """One line per ApRecord under the fixed scan header."""
    return render_csv(SCAN_COLUMNS, (record.to_dict() for record in records))


def bench_csv(rows: Iterable) -> str:
    return render_csv(BENCH_COLUMNS, (row.to_dict() for row in rows))


def write_report(path: Union[str, Path], text: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    LOGGER.info("Wrote %d bytes to %s", len(text), target)
    return target
