"""Runtime caps shared by the enumeration and character routines."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Caps:
    window: int = 200_000
    patterns: int = 500_000
    odd_factor: int = 1 << 20
    oracle_states: int = 200_000
    max_mn: int = 30

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")


_caps = Caps()


def caps() -> Caps:
    return _caps


def set_caps(**kwargs) -> Caps:
    global _caps
    _caps = replace(_caps, **kwargs)
    return _caps


@contextlib.contextmanager
def override(**kwargs):
    """Temporarily replace some caps, e.g. ``with override(window=10): ...``."""
    global _caps
    saved = _caps
    _caps = replace(_caps, **kwargs)
    try:
        yield _caps
    finally:
        _caps = saved
