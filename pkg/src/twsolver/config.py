"""Runtime switches shared by the solver modules.

``TW_DEBUG_ASSERT=1`` turns on the measure and invariant checks, which are
expensive.  ``TW_SEED`` sets the default seed used by the generators.
"""

from __future__ import annotations

import os

_debug = os.environ.get("TW_DEBUG_ASSERT", "") == "1"


def debug_enabled() -> bool:
    return _debug


def set_debug(flag: bool) -> bool:
    """Set the debug flag and return the previous value."""
    global _debug
    old = _debug
    _debug = bool(flag)
    return old


def default_seed() -> int:
    raw = os.environ.get("TW_SEED", "")
    try:
        return int(raw)
    except ValueError:
        return 0


class InvariantViolation(AssertionError):
    """A debug-mode check on a measure or structural invariant failed."""


class BudgetExceeded(RuntimeError):
    """The search node budget ran out before an answer was proved."""


class Budget:
    """Counts recursion nodes across one top-level search.

    ``limit=None`` means unlimited.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"node budget {self.limit} exhausted")


def check(cond: bool, message: str) -> None:
    """Raise InvariantViolation when debug mode is on and ``cond`` is false."""
    if _debug and not cond:
        raise InvariantViolation(message)
