"""Shared exception types and search-budget handling."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV_VAR = "EFO_BUDGET"


class ParseError(ValueError):
    """Input text is not a valid coloured order over the given palette."""

    def __init__(self, message: str, position: int | None = None, glyph: str | None = None):
        super().__init__(message)
        self.position = position
        self.glyph = glyph


class BudgetError(RuntimeError):
    """An exhaustive search would exceed the configured budget."""


class InfeasibleError(ValueError):
    """A requested combinatorial object does not exist."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


def effective_budget(budget: int | None = None) -> int:
    """Resolve a search budget: explicit value, else EFO_BUDGET, else the default."""
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_BUDGET
