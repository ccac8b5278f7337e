# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same contracts as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, M_PI

cnp.import_array()

NAME = "cython"

cdef double SQRT1_2 = sqrt(0.5)


def fft_rows(a, bint inverse=False):
    """Unnormalized radix-2 DIT FFT of every row; ``inverse`` flips the sign only."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] arr = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t rows = arr.shape[0], n = arr.shape[1]
    if n < 1 or (n & (n - 1)):
        raise ValueError(f"row length {n} is not a power of two")
    cdef double complex[:, ::1] out = arr
    cdef double complex[::1] tw = np.empty(max(n // 2, 1), dtype=np.complex128)
    cdef Py_ssize_t r, i, j, bit, m, half, start, k
    cdef double sign = 1.0 if inverse else -1.0
    cdef double complex u, v, tmp

    for r in range(rows):
        # bit-reversal permutation
        j = 0
        for i in range(1, n):
            bit = n >> 1
            while j & bit:
                j ^= bit
                bit >>= 1
            j ^= bit
            if i < j:
                tmp = out[r, i]
                out[r, i] = out[r, j]
                out[r, j] = tmp

    m = 2
    while m <= n:
        half = m // 2
        for k in range(half):
            tw[k] = cos(2.0 * M_PI * k / m) + 1j * (sign * sin(2.0 * M_PI * k / m))
        for r in range(rows):
            for start in range(0, n, m):
                for k in range(half):
                    u = out[r, start + k]
                    v = out[r, start + k + half] * tw[k]
                    out[r, start + k] = u + v
                    out[r, start + k + half] = u - v
        m *= 2
    return arr


cdef void _haar_level(double[:, ::1] x, double[:, ::1] buf, Py_ssize_t h, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t i, j, hw = w // 2, hh = h // 2
    cdef double a, b
    for i in range(h):
        for j in range(hw):
            a = x[i, 2 * j]
            b = x[i, 2 * j + 1]
            buf[i, j] = (a + b) * SQRT1_2
            buf[i, j + hw] = (a - b) * SQRT1_2
    for i in range(hh):
        for j in range(w):
            a = buf[2 * i, j]
            b = buf[2 * i + 1, j]
            x[i, j] = (a + b) * SQRT1_2
            x[i + hh, j] = (a - b) * SQRT1_2


cdef void _ihaar_level(double[:, ::1] x, double[:, ::1] buf, Py_ssize_t h, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t i, j, hw = w // 2, hh = h // 2
    cdef double lo, hi
    for i in range(hh):
        for j in range(w):
            lo = x[i, j]
            hi = x[i + hh, j]
            buf[2 * i, j] = (lo + hi) * SQRT1_2
            buf[2 * i + 1, j] = (lo - hi) * SQRT1_2
    for i in range(h):
        for j in range(hw):
            lo = buf[i, j]
            hi = buf[i, j + hw]
            x[i, 2 * j] = (lo + hi) * SQRT1_2
            x[i, 2 * j + 1] = (lo - hi) * SQRT1_2


def haar_forward(x, int levels):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] arr = np.array(x, dtype=np.float64, order="C")
    cdef double[:, ::1] out = arr
    cdef double[:, ::1] buf = np.empty_like(arr)
    cdef Py_ssize_t h = arr.shape[0], w = arr.shape[1]
    cdef int k
    for k in range(levels):
        _haar_level(out, buf, h, w)
        h //= 2
        w //= 2
    return arr


def haar_inverse(c, int levels):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] arr = np.array(c, dtype=np.float64, order="C")
    cdef double[:, ::1] out = arr
    cdef double[:, ::1] buf = np.empty_like(arr)
    cdef Py_ssize_t H = arr.shape[0], W = arr.shape[1]
    cdef int k
    for k in range(levels - 1, -1, -1):
        _ihaar_level(out, buf, H >> k, W >> k)
    return arr


def local_variance(x, int window):
    """Edge-replicated windowed population variance, two-pass."""
    cdef double[:, ::1] src = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t H = src.shape[0], W = src.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] res = np.empty((H, W), dtype=np.float64)
    cdef double[:, ::1] out = res
    cdef Py_ssize_t r = window // 2, i, j, di, dj, ii, jj
    cdef double s, mean, d, n = window * window
    with nogil:
        for i in range(H):
            for j in range(W):
                s = 0.0
                for di in range(-r, r + 1):
                    ii = min(max(i + di, 0), H - 1)
                    for dj in range(-r, r + 1):
                        jj = min(max(j + dj, 0), W - 1)
                        s += src[ii, jj]
                mean = s / n
                s = 0.0
                for di in range(-r, r + 1):
                    ii = min(max(i + di, 0), H - 1)
                    for dj in range(-r, r + 1):
                        jj = min(max(j + dj, 0), W - 1)
                        d = src[ii, jj] - mean
                        s += d * d
                out[i, j] = s / n
    return res
