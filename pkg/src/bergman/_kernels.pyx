# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled node-level kernels; contract mirrors bergman._kernels_py."""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, exp, hypot, log, pow, sin, sqrt

cnp.import_array()

ctypedef double complex dcomplex


def inner_zw(W, z):
    W = np.ascontiguousarray(W, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const dcomplex[:, ::1] wv = W
    cdef const dcomplex[::1] zv = z
    cdef Py_ssize_t n = wv.shape[0], d = wv.shape[1], i, j
    out = np.empty(n, dtype=np.complex128)
    cdef dcomplex[::1] ov = out
    cdef dcomplex acc
    for i in range(n):
        acc = 0
        for j in range(d):
            acc = acc + zv[j] * wv[i, j].conjugate()
        ov[i] = acc
    return out


def abs1m_pow(c, double e):
    c = np.ascontiguousarray(c, dtype=np.complex128)
    cdef const dcomplex[::1] cv = c
    cdef Py_ssize_t n = cv.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    for i in range(n):
        ov[i] = pow(hypot(1.0 - cv[i].real, cv[i].imag), e)
    return out


def cpow1m(c, double e):
    c = np.ascontiguousarray(c, dtype=np.complex128)
    cdef const dcomplex[::1] cv = c
    cdef Py_ssize_t n = cv.shape[0], i
    out = np.empty(n, dtype=np.complex128)
    cdef dcomplex[::1] ov = out
    cdef double re, im, mod, arg, mag
    for i in range(n):
        re = 1.0 - cv[i].real
        im = -cv[i].imag
        mod = hypot(re, im)
        arg = atan2(im, re)
        mag = exp(e * log(mod))
        ov[i] = mag * cos(e * arg) + 1j * mag * sin(e * arg)
    return out


def mobius_batch(z, W):
    z = np.ascontiguousarray(z, dtype=np.complex128)
    W = np.ascontiguousarray(W, dtype=np.complex128)
    cdef const dcomplex[::1] zv = z
    cdef const dcomplex[:, ::1] wv = W
    cdef Py_ssize_t n = wv.shape[0], d = wv.shape[1], i, j
    out = np.empty((n, d), dtype=np.complex128)
    cdef dcomplex[:, ::1] ov = out
    cdef double zz = 0.0
    for j in range(d):
        zz += zv[j].real * zv[j].real + zv[j].imag * zv[j].imag
    cdef double s = sqrt(1.0 - zz)
    cdef dcomplex ip, head, denom
    for i in range(n):
        ip = 0
        for j in range(d):
            ip = ip + wv[i, j] * zv[j].conjugate()
        head = 1.0 - ip / (1.0 + s)
        denom = 1.0 - ip
        for j in range(d):
            ov[i, j] = (zv[j] * head - s * wv[i, j]) / denom
    return out


cdef inline dcomplex _ipow(dcomplex base, long k):
    cdef dcomplex acc = 1
    cdef long m
    for m in range(k):
        acc = acc * base
    return acc


def pairing(W, alphas, coeffs):
    W = np.ascontiguousarray(W, dtype=np.complex128)
    alphas = np.ascontiguousarray(alphas, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const dcomplex[:, ::1] wv = W
    cdef const long[:, ::1] av = alphas
    cdef const dcomplex[::1] cv = coeffs
    cdef Py_ssize_t n = wv.shape[0], d = wv.shape[1], dt = av.shape[0], i, j, k
    out = np.zeros(n, dtype=np.complex128)
    cdef dcomplex[::1] ov = out
    cdef dcomplex acc, term
    for i in range(n):
        acc = 0
        for k in range(dt):
            if cv[k] == 0:
                continue
            term = cv[k]
            for j in range(d):
                if av[k, j]:
                    term = term * _ipow(wv[i, j], av[k, j])
            acc = acc + term
        ov[i] = acc
    return out


def monomials(W, alphas):
    W = np.ascontiguousarray(W, dtype=np.complex128)
    alphas = np.ascontiguousarray(alphas, dtype=np.int64)
    cdef const dcomplex[:, ::1] wv = W
    cdef const long[:, ::1] av = alphas
    cdef Py_ssize_t n = wv.shape[0], d = wv.shape[1], dt = av.shape[0], i, j, k
    out = np.empty((n, dt), dtype=np.complex128)
    cdef dcomplex[:, ::1] ov = out
    cdef dcomplex term
    for i in range(n):
        for k in range(dt):
            term = 1
            for j in range(d):
                if av[k, j]:
                    term = term * _ipow(wv[i, j], av[k, j])
            ov[i, k] = term
    return out
