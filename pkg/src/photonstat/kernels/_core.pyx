# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; numerically equivalent to ``_pure``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, fabs, INFINITY

cnp.import_array()


cdef inline void _neumaier(double x, double* s, double* comp) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        comp[0] += (s[0] - t) + x
    else:
        comp[0] += (x - t) + s[0]
    s[0] = t


def log_bunching_table(log_kn, log_der, log_fact):
    cdef const double[::1] lk = np.ascontiguousarray(log_kn, dtype=np.float64)
    cdef const double[::1] ld = np.ascontiguousarray(log_der, dtype=np.float64)
    cdef const double[::1] lf = np.ascontiguousarray(log_fact, dtype=np.float64)
    cdef Py_ssize_t n_max = lk.shape[0] - 1
    out_arr = np.zeros(n_max + 1)
    cdef double[::1] out = out_arr
    cdef double[::1] inner = np.empty(n_max + 1)
    cdef Py_ssize_t n, k
    cdef double top, t, s, comp
    with nogil:
        for k in range(n_max + 1):
            inner[k] = ld[k] + lk[k] - lf[k]
        for n in range(2, n_max + 1):
            top = 0.0
            for k in range(2, n + 1):
                t = lf[n] - lf[n - k] + inner[k]
                if t > top:
                    top = t
            s = exp(-top)
            comp = 0.0
            for k in range(2, n + 1):
                t = lf[n] - lf[n - k] + inner[k]
                if t != -INFINITY:
                    _neumaier(exp(t - top), &s, &comp)
            out[n] = top + log(s + comp)
    return out_arr


def cyclic_overlap_sums(freqs, double inv_scale):
    cdef const double[:, ::1] w = np.ascontiguousarray(freqs, dtype=np.float64)
    cdef Py_ssize_t m = w.shape[0], n = w.shape[1]
    cdef Py_ssize_t i, j
    cdef double acc, d, p, total = 0.0, total_sq = 0.0
    with nogil:
        for i in range(m):
            acc = 0.0
            for j in range(n - 1):
                d = w[i, j] - w[i, j + 1]
                acc += d * d
            d = w[i, n - 1] - w[i, 0]
            acc += d * d
            p = exp(-inv_scale * acc)
            total += p
            total_sq += p * p
    return total, total_sq


cdef void _moments(const double[::1] lw, double lc, double* out) noexcept nogil:
    cdef Py_ssize_t n, size = lw.shape[0]
    cdef double top = -INFINITY, v, p, z = 0.0, m1 = 0.0, m2 = 0.0
    for n in range(size):
        v = lw[n] + n * lc
        if v > top:
            top = v
    for n in range(size):
        p = exp(lw[n] + n * lc - top)
        z += p
        m1 += n * p
        m2 += n * (n - 1.0) * p
    out[0] = top + log(z)
    out[1] = m1 / z
    out[2] = m2 / z


def log_weight_moments(log_weights):
    cdef const double[::1] lw = np.ascontiguousarray(log_weights, dtype=np.float64)
    cdef double res[3]
    _moments(lw, 0.0, res)
    return res[0], res[1], res[2]


def scan_moments(log_base, log_c):
    cdef const double[::1] lw = np.ascontiguousarray(log_base, dtype=np.float64)
    cdef const double[::1] lc = np.ascontiguousarray(np.atleast_1d(log_c), dtype=np.float64)
    cdef Py_ssize_t j, m = lc.shape[0]
    means_arr = np.empty(m)
    fact2_arr = np.empty(m)
    cdef double[::1] means = means_arr
    cdef double[::1] fact2 = fact2_arr
    cdef double res[3]
    with nogil:
        for j in range(m):
            _moments(lw, lc[j], res)
            means[j] = res[1]
            fact2[j] = res[2]
    return means_arr, fact2_arr
