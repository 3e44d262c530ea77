import os

DEFAULT_BUDGET = 2**20

_override: int | None = None


def budget() -> int:
    """Global enumeration cap: set_budget, then ASLAB_BUDGET, then the default."""
    if _override is not None:
        return _override
    raw = os.environ.get("ASLAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def set_budget(n: int | None) -> None:
    global _override
    _override = n
