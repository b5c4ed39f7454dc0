"""Small shared helpers."""

from __future__ import annotations

import os
from contextlib import contextmanager


@contextmanager
def atomic_path(final_path):
    """Yield a temp path in the target directory; rename over `final_path` on success.

    On failure the temp file is removed, so no partial output is ever visible.
    """
    final_path = os.fspath(final_path)
    tmp = f"{final_path}.tmp.{os.getpid()}"
    try:
        yield tmp
        os.replace(tmp, final_path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
