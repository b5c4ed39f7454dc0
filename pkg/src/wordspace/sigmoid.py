"""Logistic function, exact and table-approximated.

Fast training mode looks sigmoid values up in a 1000-bin table over [-6, 6]
(bin midpoints); inputs beyond the range clamp to the boundary bins.
"""

from __future__ import annotations

import numpy as np

TABLE_SIZE = 1000
MAX_Z = 6.0


def sigmoid(z):
    """Exact logistic function, numerically stable for large |z|."""
    arr = np.atleast_1d(np.asarray(z, dtype=np.float64))
    out = np.empty_like(arr)
    pos = arr >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-arr[pos]))
    ez = np.exp(arr[~pos])
    out[~pos] = ez / (1.0 + ez)
    if np.ndim(z) == 0:
        return float(out[0])
    return out


def build_sigmoid_table() -> np.ndarray:
    """Sigmoid at the midpoint of each of the 1000 bins spanning [-6, 6] (float32)."""
    mids = -MAX_Z + (np.arange(TABLE_SIZE) + 0.5) * (2 * MAX_Z / TABLE_SIZE)
    return sigmoid(mids).astype(np.float32)


def table_sigmoid(z: float, table: np.ndarray) -> float:
    """Table lookup with clamping to the boundary bins beyond |z| = 6."""
    i = int((z + MAX_Z) * (TABLE_SIZE / (2 * MAX_Z)))
    if i < 0:
        i = 0
    elif i >= TABLE_SIZE:
        i = TABLE_SIZE - 1
    return float(table[i])
