# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled t-SNE kernels: same surface as _kernels_np, tight C loops.

Single-threaded on purpose; fixed accumulation order keeps results
deterministic run to run.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, exp, log

cnp.import_array()

cdef double _LN2 = log(2.0)


def pairwise_sq_dists(cnp.ndarray[cnp.float64_t, ndim=2] x):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t d = x.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, n), dtype=np.float64)
    cdef double[:, :] xv = x
    cdef double[:, :] ov = out
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    for i in range(n):
        ov[i, i] = INFINITY
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = xv[i, k] - xv[j, k]
                acc += diff * diff
            ov[i, j] = acc
            ov[j, i] = acc
    return out


cdef double _row_entropy_bits(double[:, :] d, Py_ssize_t i, double beta, double[:] p_row) nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t j
    cdef double dmin = INFINITY
    cdef double total = 0.0
    cdef double h = 0.0
    cdef double w
    for j in range(n):
        if d[i, j] < dmin:
            dmin = d[i, j]
    for j in range(n):
        if d[i, j] == INFINITY:
            p_row[j] = 0.0
        else:
            w = exp(-beta * (d[i, j] - dmin))
            p_row[j] = w
            total += w
    for j in range(n):
        p_row[j] /= total
        if p_row[j] > 0.0:
            h -= p_row[j] * log(p_row[j])
    return h / _LN2


def conditional_affinities(cnp.ndarray[cnp.float64_t, ndim=2] d,
                           double target_entropy_bits,
                           int max_iter=50, double tol=1e-5):
    cdef Py_ssize_t n = d.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.zeros((n, n), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] entropies = np.zeros(n, dtype=np.float64)
    cdef double[:, :] dv = d
    cdef double[:, :] pv = p
    cdef double[:] ev = entropies
    cdef Py_ssize_t i
    cdef int it
    cdef double beta, beta_lo, beta_hi, h
    for i in range(n):
        beta = 1.0
        beta_lo = 0.0
        beta_hi = INFINITY
        h = _row_entropy_bits(dv, i, beta, pv[i])
        for it in range(max_iter):
            if h - target_entropy_bits <= tol and target_entropy_bits - h <= tol:
                break
            if h > target_entropy_bits:
                beta_lo = beta
                if beta_hi == INFINITY:
                    beta = beta * 2.0
                else:
                    beta = 0.5 * (beta_lo + beta_hi)
            else:
                beta_hi = beta
                if beta_lo == 0.0:
                    beta = beta / 2.0
                else:
                    beta = 0.5 * (beta_lo + beta_hi)
            h = _row_entropy_bits(dv, i, beta, pv[i])
        ev[i] = h
    return p, entropies


def kl_and_gradient(cnp.ndarray[cnp.float64_t, ndim=2] p_grad,
                    cnp.ndarray[cnp.float64_t, ndim=2] p_kl,
                    cnp.ndarray[cnp.float64_t, ndim=2] y):
    cdef Py_ssize_t n = y.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] w = np.empty((n, n), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grad = np.zeros((n, 2), dtype=np.float64)
    cdef double[:, :] yv = y
    cdef double[:, :] wv = w
    cdef double[:, :] gv = grad
    cdef double[:, :] pg = p_grad
    cdef double[:, :] pk = p_kl
    cdef Py_ssize_t i, j
    cdef double dx, dy, z, q, kl, m, qden

    z = 0.0
    for i in range(n):
        wv[i, i] = 0.0
        for j in range(i + 1, n):
            dx = yv[i, 0] - yv[j, 0]
            dy = yv[i, 1] - yv[j, 1]
            q = 1.0 / (1.0 + dx * dx + dy * dy)
            wv[i, j] = q
            wv[j, i] = q
            z += 2.0 * q

    kl = 0.0
    for i in range(n):
        for j in range(n):
            if pk[i, j] > 0.0:
                qden = wv[i, j] / z
                if qden < 1e-300:
                    qden = 1e-300
                kl += pk[i, j] * log(pk[i, j] / qden)

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = (pg[i, j] - wv[i, j] / z) * wv[i, j]
            dx = yv[i, 0] - yv[j, 0]
            dy = yv[i, 1] - yv[j, 1]
            gv[i, 0] += 4.0 * m * dx
            gv[i, 1] += 4.0 * m * dy
    return kl, grad
