# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled log-likelihood-ratio kernels over finite candidate sets."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, INFINITY, isnan

cnp.import_array()


def mixture_log_ratio(double[:, ::1] ys, double[::1] log_weights,
                      double[:, ::1] thetas, double[::1] log_zs, double n):
    cdef Py_ssize_t m = ys.shape[0], d = ys.shape[1], k = thetas.shape[0]
    cdef Py_ssize_t i, j, c
    cdef double top, acc, s
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double[::1] buf = np.empty(k, dtype=np.float64)
    with nogil:
        for i in range(m):
            top = -INFINITY
            for j in range(k):
                s = 0.0
                for c in range(d):
                    s = s + thetas[j, c] * ys[i, c]
                s = log_weights[j] + n * (s - log_zs[j])
                if isnan(s):
                    s = -INFINITY
                buf[j] = s
                if s > top:
                    top = s
            if top == -INFINITY or top == INFINITY:
                out[i] = top
                continue
            acc = 0.0
            for j in range(k):
                acc = acc + exp(buf[j] - top)
            out[i] = top + log(acc)
    return out_arr


def best_log_ratio(double[:, ::1] ys, double[:, ::1] thetas, double[::1] log_zs, double n):
    cdef Py_ssize_t m = ys.shape[0], d = ys.shape[1], k = thetas.shape[0]
    cdef Py_ssize_t i, j, c, arg
    cdef double top, s
    val_arr = np.empty(m, dtype=np.float64)
    idx_arr = np.empty(m, dtype=np.intp)
    cdef double[::1] val = val_arr
    cdef Py_ssize_t[::1] idx = idx_arr
    with nogil:
        for i in range(m):
            top = -INFINITY
            arg = 0
            for j in range(k):
                s = 0.0
                for c in range(d):
                    s = s + thetas[j, c] * ys[i, c]
                s = n * (s - log_zs[j])
                # >= hands ties to the later (lexicographically larger) candidate
                if s >= top:
                    top = s
                    arg = j
            val[i] = top
            idx[i] = arg
    return val_arr, idx_arr
