"""Pure-Python (numpy) covering-knapsack DP tables.

Both tables are suffix tables over items ``k..m-1`` so that a caller can
reconstruct a lexicographically minimal optimal subset front to back.
"""

from __future__ import annotations

import numpy as np


def suffix_max_value(weights, values, cap: int) -> np.ndarray:
    """``T[k, w]``: best total value from items ``k..`` within weight ``w``."""
    m = len(weights)
    T = np.zeros((m + 1, cap + 1))
    for k in range(m - 1, -1, -1):
        T[k] = T[k + 1]
        wk = int(weights[k])
        if wk <= cap:
            np.maximum(T[k + 1, wk:], values[k] + T[k + 1, : cap + 1 - wk], out=T[k, wk:])
    return T


def suffix_min_weight(values, weights, cap: int) -> np.ndarray:
    """``T[k, d]``: least total weight from items ``k..`` reaching value ``d``."""
    m = len(values)
    T = np.full((m + 1, cap + 1), np.inf)
    T[m, 0] = 0.0
    demand = np.arange(cap + 1)
    for k in range(m - 1, -1, -1):
        rest = np.maximum(demand - int(values[k]), 0)
        np.minimum(T[k + 1], weights[k] + T[k + 1, rest], out=T[k])
    return T
