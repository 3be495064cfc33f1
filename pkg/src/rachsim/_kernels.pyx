# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled decode kernels; mirrors _kernels_py exactly."""

import numpy as np

cimport numpy as cnp

BACKEND = "cython"


def decode_sorted_groups(cnp.int64_t[::1] group_ids, cnp.float64_t[::1] keys,
                         double threshold):
    """Chain decode over contiguous groups of a sorted frame (see _kernels_py)."""
    cdef Py_ssize_t n = group_ids.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    if n == 0:
        return out.view(np.bool_)
    cdef cnp.uint8_t[::1] dec = out
    cdef Py_ssize_t s = 0, e, j, m, size
    while s < n:
        e = s + 1
        while e < n and group_ids[e] == group_ids[s]:
            e += 1
        size = e - s
        if size == 1:
            dec[s] = 1
        else:
            m = 0
            while m < size - 1 and keys[s + m + 1] - keys[s + m] > threshold:
                m += 1
            if m == size - 1:
                for j in range(s, e):
                    dec[j] = 1
            else:
                for j in range(s, s + m):
                    dec[j] = 1
        s = e
    return out.view(np.bool_)


def singleton_mask(cnp.int64_t[::1] group_ids):
    """Mask of entries that are alone in their group (input sorted by group)."""
    cdef Py_ssize_t n = group_ids.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    if n == 0:
        return out.view(np.bool_)
    cdef cnp.uint8_t[::1] single = out
    cdef Py_ssize_t s = 0, e
    while s < n:
        e = s + 1
        while e < n and group_ids[e] == group_ids[s]:
            e += 1
        if e - s == 1:
            single[s] = 1
        s = e
    return out.view(np.bool_)
