# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Walsh-Hadamard butterflies, Z4 chirp exponents and
binary-shift autocorrelation.  ``_pykernels`` mirrors every function here."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _parity(unsigned long long v) noexcept nogil:
    return __builtin_popcountll(v) & 1


def fwht_inplace(double complex[::1] v):
    """Unnormalised in-place Walsh-Hadamard transform."""
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double complex a, b
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    with nogil:
        while h < n:
            i = 0
            while i < n:
                for j in range(i, i + h):
                    a = v[j]
                    b = v[j + h]
                    v[j] = a + b
                    v[j + h] = a - b
                i += 2 * h
            h *= 2


def chirp_exponents(const long long[::1] rows, long long b, int m):
    """Z4 exponents xPx^T + 2 b.x (mod 4) for every x in [0, 2^m)."""
    cdef Py_ssize_t n = 1 << m
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] e = out
    cdef Py_ssize_t h, x
    cdef int j
    cdef unsigned long long row
    cdef unsigned char djj
    with nogil:
        for j in range(m):
            h = 1 << j
            row = <unsigned long long> rows[j]
            djj = (row >> j) & 1
            for x in range(h):
                e[h + x] = (e[x] + djj + 2 * _parity(x & row)) & 3
        if b:
            for x in range(n):
                e[x] = (e[x] + 2 * _parity(x & <unsigned long long> b)) & 3
    return out


def xor_autocorrelate(const double complex[::1] f, Py_ssize_t a):
    """out[x] = f[x ^ a] * conj(f[x])."""
    cdef Py_ssize_t n = f.shape[0], x
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex u, w
    with nogil:
        for x in range(n):
            u = f[x ^ a]
            w = f[x]
            o[x] = u * w.conjugate()
    return out


def shift_power_spectra(const double complex[::1] f, const long long[::1] offsets):
    """|WHT(f[x ^ a] conj f[x])|^2 for every offset a; one row per offset."""
    cdef Py_ssize_t n = f.shape[0], k = offsets.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((k, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double complex[::1] buf = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i, x, h, s, j
    cdef long long a
    cdef double complex u, w
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    with nogil:
        for i in range(k):
            a = offsets[i]
            for x in range(n):
                buf[x] = f[x ^ a] * f[x].conjugate()
            h = 1
            while h < n:
                s = 0
                while s < n:
                    for j in range(s, s + h):
                        u = buf[j]
                        w = buf[j + h]
                        buf[j] = u + w
                        buf[j + h] = u - w
                    s += 2 * h
                h *= 2
            for x in range(n):
                o[i, x] = buf[x].real * buf[x].real + buf[x].imag * buf[x].imag
    return out
