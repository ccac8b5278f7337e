"""Textbook reference implementations, deliberately naive and independent of
the package code paths they check."""
import cmath
import math


def dct2_direct(x):
    """X[u][v] = a(u) a(v) sum_m sum_n x[m][n] cos(pi(2m+1)u/2H) cos(pi(2n+1)v/2W)."""
    H, W = len(x), len(x[0])
    a = lambda k, N: math.sqrt(1.0 / N) if k == 0 else math.sqrt(2.0 / N)
    out = [[0.0] * W for _ in range(H)]
    for u in range(H):
        for v in range(W):
            s = 0.0
            for m in range(H):
                for n in range(W):
                    s += (x[m][n] * math.cos(math.pi * (2 * m + 1) * u / (2 * H))
                          * math.cos(math.pi * (2 * n + 1) * v / (2 * W)))
            out[u][v] = a(u, H) * a(v, W) * s
    return out


def dft2_direct(x):
    """X[u][v] = sum_m sum_n x[m][n] exp(-2 pi i (um/H + vn/W)), unnormalized."""
    H, W = len(x), len(x[0])
    out = [[0j] * W for _ in range(H)]
    for u in range(H):
        for v in range(W):
            s = 0j
            for m in range(H):
                for n in range(W):
                    s += x[m][n] * cmath.exp(-2j * math.pi * (u * m / H + v * n / W))
            out[u][v] = s
    return out


def haar_level_direct(x):
    """One orthonormal 2-D Haar level written out per output sample.

    Top-left: (a+b+c+d)/2, top-right: (a-b+c-d)/2, bottom-left: (a+b-c-d)/2,
    bottom-right: (a-b-c+d)/2, where a b / c d is the 2x2 block at (2i, 2j).
    """
    H, W = len(x), len(x[0])
    h, w = H // 2, W // 2
    out = [[0.0] * W for _ in range(H)]
    for i in range(h):
        for j in range(w):
            a, b = x[2 * i][2 * j], x[2 * i][2 * j + 1]
            c, d = x[2 * i + 1][2 * j], x[2 * i + 1][2 * j + 1]
            out[i][j] = (a + b + c + d) / 2
            out[i][j + w] = (a - b + c - d) / 2
            out[i + h][j] = (a + b - c - d) / 2
            out[i + h][j + w] = (a - b - c + d) / 2
    return out


def haar_direct(x, levels):
    out = [row[:] for row in x]
    H, W = len(x), len(x[0])
    for k in range(levels):
        h, w = H >> k, W >> k
        block = haar_level_direct([row[:w] for row in out[:h]])
        for i in range(h):
            out[i][:w] = block[i]
    return out


def mse_loops(a, b):
    H, W = len(a), len(a[0])
    s = 0
    for i in range(H):
        for j in range(W):
            s += (int(a[i][j]) - int(b[i][j])) ** 2
    return s / (H * W)


def psnr_loops(a, b):
    e = mse_loops(a, b)
    return math.inf if e == 0 else 10 * math.log10(255 * 255 / e)


def snr_loops(a, b):
    sig = sum(int(v) ** 2 for row in a for v in row)
    noise = sum((int(p) - int(q)) ** 2 for ra, rb in zip(a, b) for p, q in zip(ra, rb))
    if noise == 0:
        return math.inf
    if sig == 0:
        return -math.inf
    return 10 * math.log10(sig / noise)


MASK64 = (1 << 64) - 1


def splitmix64_scalar(seed, count):
    """Sequential SplitMix64 with Python big ints."""
    state = seed
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out
