"""SQLAlchemy models for cached primes, scan runs and benchmark runs."""
from __future__ import annotations

import uuid
from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Float, ForeignKey, Index, Integer, String, Text
from sqlalchemy.orm import relationship

from db import Base


def utcnow() -> datetime:
    """Return current UTC time as timezone-aware datetime."""
    return datetime.now(timezone.utc)


class PrimeRecord(Base):
    """Least a with a * 2^m + 1 prime, found by a search up to a_max."""

    __tablename__ = "prime_records"

    m = Column(Integer, primary_key=True)
    a = Column(Integer, nullable=False)
    a_max = Column(Integer, nullable=False)
    created_at = Column(DateTime, nullable=False, default=utcnow)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "a": self.a,
            "a_max": self.a_max,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }


class Run(Base):
    __tablename__ = "runs"

    id = Column(String(36), primary_key=True, default=lambda: str(uuid.uuid4()))
    kind = Column(String(10), nullable=False)  # "scan" or "bench"
    params = Column(Text, nullable=True)  # JSON
    summary = Column(Text, nullable=True)
    created_at = Column(DateTime, nullable=False, default=utcnow)

    scan_rows = relationship("ApScanRow", back_populates="run", order_by="ApScanRow.q", cascade="all, delete-orphan")
    bench_rows = relationship("BenchRow", back_populates="run", order_by="BenchRow.id", cascade="all, delete-orphan")

    __table_args__ = (Index("idx_runs_kind_created", "kind", "created_at"),)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "params": self.params,
            "summary": self.summary,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }


class ApScanRow(Base):
    __tablename__ = "ap_scan_rows"

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(String(36), ForeignKey("runs.id", ondelete="CASCADE"), nullable=False, index=True)
    q = Column(Integer, nullable=False)
    r = Column(Integer, nullable=False)
    phi_q = Column(Integer, nullable=False)
    least_prime = Column(Integer, nullable=False)
    ratio_num = Column(Integer, nullable=False)
    ratio_den = Column(Integer, nullable=False)

    run = relationship("Run", back_populates="scan_rows")

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "P_q": self.least_prime,
            "phi_q": self.phi_q,
            "ratio_num": self.ratio_num,
            "ratio_den": self.ratio_den,
        }


class BenchRow(Base):
    __tablename__ = "bench_rows"

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(String(36), ForeignKey("runs.id", ondelete="CASCADE"), nullable=False, index=True)
    bits = Column(Integer, nullable=False)
    engine = Column(String(20), nullable=False)
    seconds = Column(Float, nullable=False)
    fp_mults = Column(Integer, nullable=False)
    recursions = Column(Integer, nullable=False)
    layers = Column(Integer, nullable=False)

    run = relationship("Run", back_populates="bench_rows")

    def to_dict(self) -> dict:
        return {
            "bits": self.bits,
            "engine": self.engine,
            "seconds": self.seconds,
            "fp_mults": self.fp_mults,
            "recursions": self.recursions,
            "layers": self.layers,
        }
