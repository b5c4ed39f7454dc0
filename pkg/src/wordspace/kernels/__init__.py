"""Kernel backend selection: compiled extension when available, NumPy otherwise.

Set WORDSPACE_KERNEL=pure to force the fallback (useful for benchmarking and
debugging); WORDSPACE_KERNEL=compiled raises if the extension is missing.
"""

from __future__ import annotations

import logging
import os

from . import pure

logger = logging.getLogger(__name__)

try:
    from . import _inner as compiled
except ImportError:  # extension not built; pure NumPy path remains available
    compiled = None


def select(name: str | None = None):
    """Return the kernel module for `name` (auto/pure/compiled)."""
    if name is None:
        name = os.environ.get("WORDSPACE_KERNEL", "auto")
    if name in ("auto", ""):
        return compiled if compiled is not None else pure
    if name == "pure":
        return pure
    if name == "compiled":
        if compiled is None:
            raise ImportError("compiled kernel requested but the extension is not built")
        return compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def active_backend() -> str:
    return select().BACKEND
