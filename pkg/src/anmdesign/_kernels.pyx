# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled covering-knapsack DP tables (see ``_kernels_py`` for the reference)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def suffix_max_value(const cnp.int64_t[:] weights, const double[:] values, long long cap):
    cdef Py_ssize_t m = weights.shape[0]
    cdef Py_ssize_t k, w, wk
    cdef double vk, cand
    out = np.zeros((m + 1, cap + 1), dtype=np.float64)
    cdef double[:, ::1] T = out
    for k in range(m - 1, -1, -1):
        wk = weights[k]
        vk = values[k]
        for w in range(cap + 1):
            T[k, w] = T[k + 1, w]
            if w >= wk:
                cand = vk + T[k + 1, w - wk]
                if cand > T[k, w]:
                    T[k, w] = cand
    return out


def suffix_min_weight(const cnp.int64_t[:] values, const double[:] weights, long long cap):
    cdef Py_ssize_t m = values.shape[0]
    cdef Py_ssize_t k, d, rest
    cdef cnp.int64_t vk
    cdef double wk, cand
    out = np.full((m + 1, cap + 1), np.inf, dtype=np.float64)
    cdef double[:, ::1] T = out
    T[m, 0] = 0.0
    for k in range(m - 1, -1, -1):
        vk = values[k]
        wk = weights[k]
        for d in range(cap + 1):
            rest = d - vk
            if rest < 0:
                rest = 0
            cand = wk + T[k + 1, rest]
            T[k, d] = cand if cand < T[k + 1, d] else T[k + 1, d]
    return out
