# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled edge-list kernels. Same contract as ``_fallback``."""

import numpy as np

from libc.math cimport pow, sqrt, isfinite
from libc.stdlib cimport malloc, free


cdef void _adjacency_into(const long long[:, ::1] edges, const double[::1] x,
                          double[::1] out, double* suf) noexcept nogil:
    cdef Py_ssize_t m = edges.shape[0], k = edges.shape[1]
    cdef Py_ssize_t e, j
    cdef double pre
    for j in range(out.shape[0]):
        out[j] = 0.0
    for e in range(m):
        # suf[j] = x[e_{j+1}] * ... * x[e_{k-1}], accumulated right to left
        suf[k - 1] = 1.0
        for j in range(k - 1, 0, -1):
            suf[j - 1] = suf[j] * x[edges[e, j]]
        pre = 1.0
        for j in range(k):
            out[edges[e, j]] += pre * suf[j]
            pre = pre * x[edges[e, j]]


def adjacency_apply(const long long[:, ::1] edges, const double[::1] x, double[::1] out):
    cdef double* suf = <double*> malloc(max(edges.shape[1], 1) * sizeof(double))
    if suf == NULL:
        raise MemoryError()
    try:
        _adjacency_into(edges, x, out, suf)
    finally:
        free(suf)


def power_iterate(const long long[:, ::1] edges, const double[::1] diag,
                  const double[::1] scale, const double[::1] b, double shift,
                  double[::1] x, double tol, long max_iter, double lo, double hi):
    cdef Py_ssize_t n = x.shape[0], k = edges.shape[1], i
    cdef long it = 0
    cdef int status = 0
    cdef double p, r, cur_lo = 0.0, cur_hi = 0.0, top
    cdef double inv = 1.0 / (k - 1)
    cdef double[::1] z = np.empty(n)
    cdef double[::1] a = np.empty(n)
    cdef double[::1] y = np.empty(n)
    cdef double* suf = <double*> malloc(k * sizeof(double))
    if suf == NULL:
        raise MemoryError()
    try:
        with nogil:
            while it < max_iter:
                for i in range(n):
                    z[i] = b[i] * x[i]
                _adjacency_into(edges, z, a, suf)
                for i in range(n):
                    p = x[i] if k == 2 else pow(x[i], k - 1)
                    y[i] = scale[i] * a[i] + (diag[i] + shift) * p
                    r = y[i] / p
                    if not isfinite(r):
                        status = -1
                        break
                    if i == 0 or r < cur_lo:
                        cur_lo = r
                    if i == 0 or r > cur_hi:
                        cur_hi = r
                if status == -1:
                    break
                it += 1
                if cur_lo - shift > lo:
                    lo = cur_lo - shift
                if cur_hi - shift < hi:
                    hi = cur_hi - shift
                if cur_hi - cur_lo <= tol:
                    status = 1
                    break
                top = 0.0
                for i in range(n):
                    if not y[i] > 0.0:
                        status = -1
                        break
                    if k == 3:
                        y[i] = sqrt(y[i])
                    elif k > 3:
                        y[i] = pow(y[i], inv)
                    if y[i] > top:
                        top = y[i]
                if status == -1:
                    break
                for i in range(n):
                    x[i] = y[i] / top
    finally:
        free(suf)
    return it, lo, hi, cur_lo, cur_hi, status
