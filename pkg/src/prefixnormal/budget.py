"""Desk-scale caps for exhaustive computations, overridable from the environment."""

from __future__ import annotations

import os

ENUM_MAX_N = "PREFIXNORMAL_ENUM_MAX_N"
SWEEP_MAX_N = "PREFIXNORMAL_SWEEP_MAX_N"
GAME_MAX_N = "PREFIXNORMAL_GAME_MAX_N"

_DEFAULTS = {ENUM_MAX_N: 30, SWEEP_MAX_N: 26, GAME_MAX_N: 13}


class BudgetExceeded(ValueError):
    pass


def cap(name: str) -> int:
    value = os.environ.get(name)
    return int(value) if value else _DEFAULTS[name]


def check(name: str, n: int, what: str, limit: int | None = None) -> None:
    limit = cap(name) if limit is None else limit
    if n > limit:
        raise BudgetExceeded(f"{what}: n={n} exceeds the budget of {limit} (set {name} to raise it)")
