from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterator


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BudgetSnapshot:
    limit_ms: int
    elapsed_ms: int


class TimeBudget:
    """Cooperative wall-clock cap; hot loops call `charge()`."""

    def __init__(self, limit_ms: int):
        self.limit_ms = max(0, int(limit_ms))
        self._started = time.monotonic()

    @property
    def enabled(self) -> bool:
        return self.limit_ms > 0

    def elapsed_ms(self) -> int:
        return int((time.monotonic() - self._started) * 1000)

    def snapshot(self) -> BudgetSnapshot:
        return BudgetSnapshot(limit_ms=self.limit_ms, elapsed_ms=self.elapsed_ms())

    def check_budget(self) -> BudgetSnapshot:
        snapshot = self.snapshot()
        if self.enabled and snapshot.elapsed_ms >= self.limit_ms:
            raise BudgetExceeded(f"time budget reached: used={snapshot.elapsed_ms}ms, limit={self.limit_ms}ms")
        return snapshot


_ACTIVE: ContextVar[TimeBudget | None] = ContextVar("qmatrices_time_budget", default=None)


@contextmanager
def time_budget(limit_ms: int) -> Iterator[TimeBudget]:
    budget = TimeBudget(limit_ms)
    token = _ACTIVE.set(budget)
    try:
        yield budget
    finally:
        _ACTIVE.reset(token)


def charge() -> None:
    budget = _ACTIVE.get()
    if budget is not None and budget.enabled:
        budget.check_budget()
