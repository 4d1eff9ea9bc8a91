"""Enumeration ceilings shared by every brute-force path."""

from __future__ import annotations

import os

DEFAULT_GUARD = 10**7
# Pairwise lookup tables are |R| x |R|; beyond this they stop being cheap.
MAX_TABLE_RING = 2048


class GuardExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured ceiling."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: {size} exceeds guard {limit} (set MACWILLIAMS_GUARD to override)")
        self.what = what
        self.size = size
        self.limit = limit


def guard_limit() -> int:
    raw = os.environ.get("MACWILLIAMS_GUARD")
    if raw is None:
        return DEFAULT_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MACWILLIAMS_GUARD must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("MACWILLIAMS_GUARD must be positive")
    return value


def check_guard(what: str, size: int, limit: int | None = None) -> None:
    limit = guard_limit() if limit is None else limit
    if size > limit:
        raise GuardExceeded(what, size, limit)


def table_guard(ring_size: int) -> None:
    if ring_size > MAX_TABLE_RING:
        raise GuardExceeded("ring size for lookup tables", ring_size, MAX_TABLE_RING)
