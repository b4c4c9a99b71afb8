# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled EM E-step kernel; mirrors _em_numpy.estep_chunk slot for slot."""

from libc.math cimport log

import numpy as np

BACKEND = "native"


def estep_chunk(double[::1] t, long long[::1] k_flat, long long[::1] g_flat,
                long long[::1] group_ptr, Py_ssize_t g_lo, Py_ssize_t g_hi,
                Py_ssize_t n_pairs):
    counts_arr = np.zeros(n_pairs, dtype=np.float64)
    cdef double[::1] counts = counts_arr
    cdef double ll = 0.0
    cdef double denom
    cdef Py_ssize_t g, s, lo, hi
    with nogil:
        for g in range(g_lo, g_hi):
            lo = group_ptr[g]
            hi = group_ptr[g + 1]
            denom = 0.0
            for s in range(lo, hi):
                denom += t[k_flat[s]]
            ll += log(denom) - log(<double> (hi - lo))
            for s in range(lo, hi):
                counts[k_flat[s]] += t[k_flat[s]] / denom
    return counts_arr, ll
