"""Application configuration and logging helpers."""
from __future__ import annotations

import logging
from fractions import Fraction
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    log_level: str = "INFO"
    log_file: str = "logs/fftmul.log"
    database_url: str = "sqlite:///./data/fftmul.db"
    store_results: bool = True  # persist primes, scans and bench rows

    # Arithmetic
    karatsuba_cutoff: int = 32  # limbs; below this schoolbook is used
    mul_bypass_bits: int = 2048  # multiply() hands smaller operands to Karatsuba

    # Prime search
    hypothesis_c: Fraction = Fraction(3, 2)
    primality_rounds: int = 64
    trial_division_bound: int = 2000
    search_workers: int = 1
    search_block: int = 64
    search_timeout: float = 60.0  # seconds, for searches with no bound on a

    # Reproducibility
    seed: int = 0

    # Default transform profile file (key=value lines)
    profile_path: Optional[str] = None

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        arbitrary_types_allowed=True,
    )

    @field_validator("hypothesis_c", mode="before")
    @classmethod
    def parse_fraction(cls, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        value = Fraction(value)
        if value <= 0:
            raise ValueError("hypothesis_c must be positive")
        return value

    @field_validator("karatsuba_cutoff", "primality_rounds", "search_workers", "search_block")
    @classmethod
    def require_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("search_timeout")
    @classmethod
    def positive_timeout(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("search_timeout must be positive")
        return value


settings = Settings()


def setup_logging(level: Optional[str] = None) -> None:
    """Configure application-wide logging."""
    logger = logging.getLogger()
    if logger.handlers:
        return

    level_name = (level or settings.log_level).upper()
    numeric = getattr(logging, level_name, logging.INFO)
    logger.setLevel(numeric)

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    log_path = Path(settings.log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)
    file_handler = RotatingFileHandler(
        log_path, maxBytes=10 * 1024 * 1024, backupCount=5
    )
    file_handler.setFormatter(formatter)
    file_handler.setLevel(numeric)

    # StreamHandler writes to stderr; stdout carries hex and CSV output.
    console = logging.StreamHandler()
    console.setFormatter(formatter)
    console.setLevel(numeric)

    logger.addHandler(file_handler)
    logger.addHandler(console)

    # SQLAlchemy echoes every statement at INFO
    logging.getLogger("sqlalchemy.engine").setLevel(logging.WARNING)
