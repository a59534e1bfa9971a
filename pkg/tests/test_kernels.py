import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anmdesign import _kernels_py, kernels

BACKENDS = kernels.implementations()


def test_backend_reported():
    assert kernels.BACKEND in BACKENDS


def test_pure_python_switch():
    out = subprocess.run(
        [sys.executable, "-c", "import anmdesign.kernels as k; print(k.BACKEND)"],
        env={**os.environ, "ANM_PURE_PYTHON": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_suffix_tables_by_hand():
    T = kernels.suffix_max_value([2, 1], [3.0, 2.0], 3, impl=_kernels_py)
    # row k: best value from items k.. with weight <= c
    assert T.tolist() == [[0, 2, 3, 5], [0, 2, 2, 2], [0, 0, 0, 0]]
    U = kernels.suffix_min_weight([2, 1], [5.0, 1.0], 3, impl=_kernels_py)
    assert U[2].tolist() == [0, np.inf, np.inf, np.inf]
    assert U[0].tolist() == [0, 1, 5, 6]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@settings(max_examples=100, deadline=None)
@given(
    rows=st.lists(st.tuples(st.integers(0, 12), st.floats(0, 100)), max_size=12),
    cap=st.integers(0, 60),
)
def test_backends_agree(rows, cap):
    ints = [r[0] for r in rows]
    reals = [r[1] for r in rows]
    for name in ("suffix_max_value", "suffix_min_weight"):
        fn = getattr(kernels, name)
        a = fn(ints, reals, cap, impl=BACKENDS["compiled"])
        b = fn(ints, reals, cap, impl=BACKENDS["python"])
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)
