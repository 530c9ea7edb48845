# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled event-array kernels (direct sequential recursions)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def fifo_departures(arrivals, work):
    """Departure epochs of a FIFO single-server queue started empty."""
    cdef double[::1] a = np.ascontiguousarray(arrivals, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(work, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] d = out
    cdef double t = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if a[i] > t:
            t = a[i]
        t += w[i]
        d[i] = t
    return out


def running_regulator(values):
    """Minimal non-decreasing push keeping values + push nonnegative."""
    cdef double[::1] x = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] r = out
    cdef double m = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        if -x[i] > m:
            m = -x[i]
        r[i] = m
    return out
