from __future__ import annotations

import os

__all__ = ["BudgetExceeded", "default_budget", "DEFAULT_BUDGET_N", "DEFAULT_HN_BUDGET_N"]

DEFAULT_BUDGET_N = 13
# exhaustive scans of H_n = [n]^n
DEFAULT_HN_BUDGET_N = 8


class BudgetExceeded(RuntimeError):
    """Raised instead of returning a partial result when ``n`` is over budget."""


def default_budget() -> int:
    raw = os.environ.get("RANKMOD_BUDGET_N")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET_N
    return int(raw)


def check_budget(n: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if n > limit:
        raise BudgetExceeded(f"{what}: n={n} exceeds the enumeration budget n<={limit}")
