"""Pure-Python (numpy) kernels.

Reference backend. ``_ckernels.pyx`` implements the same four functions in
Cython; both must agree to floating-point rounding.
"""
import numpy as np

NAME = "python"

_SQRT1_2 = np.sqrt(0.5)


def bit_reverse_indices(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft_rows(a, inverse=False):
    """Unnormalized radix-2 DIT FFT of every row of a 2-D array.

    The forward kernel is exp(-2*pi*i*k*n/N); ``inverse`` flips the sign and
    does NOT divide by N.
    """
    a = np.asarray(a, dtype=np.complex128)
    rows, n = a.shape
    if n < 1 or n & (n - 1):
        raise ValueError(f"row length {n} is not a power of two")
    out = np.ascontiguousarray(a[:, bit_reverse_indices(n)])
    sign = 1.0 if inverse else -1.0
    m = 2
    while m <= n:
        half = m // 2
        tw = np.exp(sign * 2j * np.pi * np.arange(half) / m)
        blocks = out.reshape(rows, n // m, m)
        u = blocks[..., :half].copy()
        v = blocks[..., half:] * tw
        blocks[..., :half] = u + v
        blocks[..., half:] = u - v
        m *= 2
    return out


def _analysis(x, axis):
    even = np.take(x, np.arange(0, x.shape[axis], 2), axis=axis)
    odd = np.take(x, np.arange(1, x.shape[axis], 2), axis=axis)
    return np.concatenate([(even + odd) * _SQRT1_2, (even - odd) * _SQRT1_2], axis=axis)


def _synthesis(c, axis):
    half = c.shape[axis] // 2
    low = np.take(c, np.arange(half), axis=axis)
    high = np.take(c, np.arange(half, 2 * half), axis=axis)
    out = np.empty_like(c)
    sl_even = [slice(None)] * 2
    sl_odd = [slice(None)] * 2
    sl_even[axis] = slice(0, None, 2)
    sl_odd[axis] = slice(1, None, 2)
    out[tuple(sl_even)] = (low + high) * _SQRT1_2
    out[tuple(sl_odd)] = (low - high) * _SQRT1_2
    return out


def haar_forward(x, levels):
    """Orthonormal 2-D Haar pyramid, in-place layout (LL shrinks to top-left)."""
    out = np.array(x, dtype=np.float64)
    h, w = out.shape
    for _ in range(levels):
        block = out[:h, :w]
        block = _analysis(block, axis=1)
        block = _analysis(block, axis=0)
        out[:h, :w] = block
        h //= 2
        w //= 2
    return out


def haar_inverse(c, levels):
    out = np.array(c, dtype=np.float64)
    H, W = out.shape
    for k in range(levels - 1, -1, -1):
        h, w = H >> k, W >> k
        block = out[:h, :w]
        block = _synthesis(block, axis=0)
        block = _synthesis(block, axis=1)
        out[:h, :w] = block
    return out


def local_variance(x, window):
    """Population variance over a ``window`` x ``window`` neighbourhood.

    Borders are edge-replicated. Two-pass (mean, then squared deviations).
    """
    x = np.asarray(x, dtype=np.float64)
    r = window // 2
    padded = np.pad(x, r, mode="edge")
    win = np.lib.stride_tricks.sliding_window_view(padded, (window, window))
    mean = win.mean(axis=(-2, -1), keepdims=True)
    return ((win - mean) ** 2).mean(axis=(-2, -1))
