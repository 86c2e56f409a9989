"""Persistence of prime searches, scans and benchmark runs."""
from __future__ import annotations

import json
import logging
from typing import Any, Dict, Iterable, List, Optional

from sqlalchemy.engine import Engine
from sqlalchemy.orm import sessionmaker

import database
from database import init_db, session_scope
from errors import NotFound
from models import ApScanRow, BenchRow, PrimeRecord, Run
from primes import FftPrime, ScanSummary, default_a_max, find_p0

LOGGER = logging.getLogger(__name__)


class ResultStore:
    """Thin repository over the result tables; creates them on first use."""

    def __init__(self, engine: Optional[Engine] = None) -> None:
        self.engine = engine or database.engine
        self._sessions = sessionmaker(bind=self.engine, autoflush=False, autocommit=False)
        self._ready = False

    def _ensure_schema(self) -> None:
        if not self._ready:
            init_db(self.engine)
            self._ready = True

    # --- primes ---------------------------------------------------------
    def cached_find_p0(self, m: int, a_max: Optional[int] = None) -> FftPrime:
        """find_p0 with the result remembered per m.

        A cached a above ``a_max`` means no prime exists in the requested
        range, since the cached a is the least one.
        """
        self._ensure_schema()
        limit = default_a_max(m) if a_max is None else a_max
        with session_scope(self._sessions) as db:
            record = db.get(PrimeRecord, m)
            cached = None if record is None else (record.a, record.a_max)
        if cached is not None:
            a, _ = cached
            if a > limit:
                raise NotFound(f"no prime a*2^{m}+1 with a <= {limit}")
            LOGGER.info("[STORE] p0(%d) from cache: a=%d", m, a)
            return FftPrime(m, a)

        prime = find_p0(m, limit)
        with session_scope(self._sessions) as db:
            db.merge(PrimeRecord(m=m, a=prime.a, a_max=limit))
        LOGGER.info("[STORE] cached p0(%d): a=%d", m, prime.a)
        return prime

    def cached_primes(self) -> List[Dict[str, Any]]:
        self._ensure_schema()
        with session_scope(self._sessions) as db:
            return [record.to_dict() for record in db.query(PrimeRecord).order_by(PrimeRecord.m)]

    # --- runs -----------------------------------------------------------
    def record_scan(self, summary: ScanSummary, params: Optional[Dict[str, Any]] = None) -> str:
        self._ensure_schema()
        with session_scope(self._sessions) as db:
            run = Run(kind="scan", params=json.dumps(params or {}), summary=summary.summary_line())
            run.scan_rows = [
                ApScanRow(
                    q=record.q,
                    r=record.r,
                    phi_q=record.phi_q,
                    least_prime=record.least_prime,
                    ratio_num=record.ratio.numerator,
                    ratio_den=record.ratio.denominator,
                )
                for record in summary.records
            ]
            db.add(run)
            db.flush()
            run_id = run.id
        LOGGER.info("[STORE] scan run %s: %d rows", run_id, len(summary.records))
        return run_id

    def record_bench(self, rows: Iterable, params: Optional[Dict[str, Any]] = None) -> str:
        self._ensure_schema()
        rows = list(rows)
        with session_scope(self._sessions) as db:
            run = Run(kind="bench", params=json.dumps(params or {}))
            run.bench_rows = [BenchRow(**row.to_dict()) for row in rows]
            db.add(run)
            db.flush()
            run_id = run.id
        LOGGER.info("[STORE] bench run %s: %d rows", run_id, len(rows))
        return run_id

    def load_run(self, run_id: str) -> Dict[str, Any]:
        self._ensure_schema()
        with session_scope(self._sessions) as db:
            run = db.get(Run, run_id)
            if run is None:
                raise NotFound(f"run not found: {run_id}")
            rows = run.scan_rows if run.kind == "scan" else run.bench_rows
            payload = run.to_dict()
            payload["rows"] = [row.to_dict() for row in rows]
            return payload
