"""Process-wide operation counters for the transform engines."""
from __future__ import annotations

import logging
import threading
from dataclasses import asdict, dataclass

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CounterSnapshot:
    fp_mults: int = 0
    recursions: int = 0
    layers: int = 0
    short_layers: int = 0
    radix2_layers: int = 0
    short_transforms: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


class OpCounters:
    """Accumulates bulk operation counts; engines add once per call."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._values = CounterSnapshot().to_dict()

    def add(self, **counts: int) -> None:
        with self._lock:
            for name, value in counts.items():
                if name not in self._values:
                    raise KeyError(f"Unknown counter: {name}")
                self._values[name] += value

    def snapshot(self) -> CounterSnapshot:
        with self._lock:
            return CounterSnapshot(**self._values)

    def reset(self) -> None:
        with self._lock:
            self._values = CounterSnapshot().to_dict()
        LOGGER.debug("Operation counters reset")


op_counters = OpCounters()
