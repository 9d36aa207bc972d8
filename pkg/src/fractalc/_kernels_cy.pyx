# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled core for the hot kernels; mirrors _kernels_py exactly."""

from libc.math cimport cos, pow

import numpy as np

cimport numpy as cnp

cnp.import_array()


def abel_weights(double beta, int n):
    """Product-integration weights; see _kernels_py.abel_weights."""
    if n < 1:
        raise ValueError("abel_weights requires n >= 1")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.zeros(n + 1, dtype=np.float64)
    cdef double[:] wv = w
    cdef int m
    cdef double pm, pm1, qm, qm1, moment0, moment1, w_far, w_near, dm
    pm1 = 0.0
    qm1 = 0.0
    for m in range(1, n + 1):
        dm = <double> m
        pm = pow(dm, beta)
        qm = pm * dm
        moment0 = (pm - pm1) / beta
        moment1 = (qm - qm1) / (beta + 1.0)
        w_far = moment1 - (dm - 1.0) * moment0
        w_near = dm * moment0 - moment1
        wv[n - m] += w_far
        wv[n - m + 1] += w_near
        pm1 = pm
        qm1 = qm
    return w


def gl_weights(double alpha, int n):
    """Signed binomial weights (-1)**k C(alpha, k) by recurrence."""
    if n < 0:
        raise ValueError("gl_weights requires n >= 0")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(n + 1, dtype=np.float64)
    cdef double[:] wv = w
    cdef int k
    wv[0] = 1.0
    for k in range(1, n + 1):
        wv[k] = wv[k - 1] * ((<double> k - 1.0 - alpha) / <double> k)
    return w


def weierstrass_sum(double alpha, double q, int n_max, x):
    """sum_{k=0..n_max} q**(-alpha k) cos(q**k x), elementwise over x."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(
        np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel()
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(xs.shape[0], dtype=np.float64)
    cdef double[:] xv = xs
    cdef double[:] ov = out
    cdef Py_ssize_t i, npts = xs.shape[0]
    cdef int k
    cdef double amp, freq
    for k in range(n_max + 1):
        amp = pow(q, -alpha * k)
        freq = pow(q, <double> k)
        for i in range(npts):
            ov[i] += amp * cos(freq * xv[i])
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        return out.reshape(()).copy()
    return out.reshape(arr.shape)
