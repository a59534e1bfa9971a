"""Backend selection for the knapsack DP kernels.

The compiled extension is used when it imports; setting ``ANM_PURE_PYTHON=1``
forces the numpy fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("ANM_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _kernels_py


def suffix_max_value(weights, values, cap: int, impl=None) -> np.ndarray:
    impl = impl or _impl
    return impl.suffix_max_value(
        np.ascontiguousarray(weights, dtype=np.int64),
        np.ascontiguousarray(values, dtype=np.float64),
        int(cap),
    )


def suffix_min_weight(values, weights, cap: int, impl=None) -> np.ndarray:
    impl = impl or _impl
    return impl.suffix_min_weight(
        np.ascontiguousarray(values, dtype=np.int64),
        np.ascontiguousarray(weights, dtype=np.float64),
        int(cap),
    )


def implementations() -> dict[str, object]:
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
