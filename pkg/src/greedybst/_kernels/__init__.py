"""Kernel selection: compiled extension when built, pure Python otherwise.

Set GREEDYBST_PURE=1 to force the fallback even when the extension exists.
Both implementations expose the same two functions and must agree exactly;
``available_engines`` feeds the agreement tests and the benchmark.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _speedups = None

if _speedups is not None and not os.environ.get("GREEDYBST_PURE"):
    _active = _speedups
else:
    _active = _pure

ENGINE: str = _active.ENGINE
COMPILED_AVAILABLE: bool = _speedups is not None

greedyass_run = _active.greedyass_run
greedy_future_run = _active.greedy_future_run


def available_engines() -> dict[str, object]:
    engines: dict[str, object] = {"pure": _pure}
    if _speedups is not None:
        engines["compiled"] = _speedups
    return engines


def get_engine(name: str | None = None):
    """Return the kernel module for ``name`` (None = the active default)."""
    if name is None:
        return _active
    engines = available_engines()
    if name not in engines:
        raise ValueError(f"engine {name!r} not available (have: {sorted(engines)})")
    return engines[name]
