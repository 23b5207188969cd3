"""Search budgets shared by the oracle and the factorization search."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10_000_000
ENV_VAR = "SFT2D_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when a bounded search runs out of its work allowance."""

    def __init__(self, budget: int, what: str = "search"):
        super().__init__(f"{what} exceeded budget of {budget} steps")
        self.budget = budget


class BudgetConfigError(ValueError):
    pass


def default_budget() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise BudgetConfigError(f"{ENV_VAR} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise BudgetConfigError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
    return value


class Counter:
    """Counts work units and raises :class:`BudgetExceeded` past the limit."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None = None, what: str = "search"):
        self.limit = default_budget() if limit is None else limit
        self.used = 0
        self.what = what

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(self.limit, self.what)
