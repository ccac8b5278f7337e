"""MSE, SNR, PSNR and NVF-weighted PSNR for 8-bit images.

All dB metrics return ``math.inf`` when the error is exactly zero, and SNR
returns ``-math.inf`` for an all-black reference with nonzero error. The
first argument is always the reference image.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .pixelio import Image

__all__ = [
    "PEAK",
    "NVF_WINDOW",
    "NVF_THETA_SCALE",
    "QualityReport",
    "mse",
    "psnr",
    "psnr_from_mse",
    "snr",
    "nvf",
    "wpsnr",
    "quality",
]

PEAK = 255.0
NVF_WINDOW = 9
NVF_THETA_SCALE = 150.0


def _pair(a: Image, b: Image) -> tuple[np.ndarray, np.ndarray]:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}")
    return a.pixels.astype(np.float64), b.pixels.astype(np.float64)


def mse(a: Image, b: Image) -> float:
    x, y = _pair(a, b)
    return float(np.mean((x - y) ** 2))


def psnr_from_mse(err: float) -> float:
    if err == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / err)


def psnr(a: Image, b: Image) -> float:
    return psnr_from_mse(mse(a, b))


def snr(a: Image, b: Image) -> float:
    """10*log10(sum a^2 / sum (a - b)^2) with ``a`` as the signal."""
    x, y = _pair(a, b)
    noise = float(np.sum((x - y) ** 2))
    signal = float(np.sum(x * x))
    if noise == 0:
        return math.inf
    if signal == 0:
        return -math.inf
    return 10.0 * math.log10(signal / noise)


def nvf(img: Image, window: int = NVF_WINDOW, theta_scale: float = NVF_THETA_SCALE) -> np.ndarray:
    """Noise visibility function, 1 / (1 + theta * local_variance).

    theta = theta_scale / max(local_variance), so values lie in (0, 1] and a
    flat image maps to all ones.
    """
    if window < 3 or window % 2 == 0:
        raise ValueError(f"window must be an odd integer >= 3, got {window}")
    if theta_scale <= 0:
        raise ValueError("theta_scale must be positive")
    var = _backend.kernels.local_variance(img.pixels.astype(np.float64), window)
    peak = float(var.max())
    if peak == 0:
        return np.ones(img.shape)
    return 1.0 / (1.0 + (theta_scale / peak) * var)


def wpsnr(a: Image, b: Image) -> float:
    """PSNR with each pixel error scaled by the NVF of the reference ``a``."""
    x, y = _pair(a, b)
    weighted = np.mean((nvf(a) * (x - y)) ** 2)
    return psnr_from_mse(float(weighted))


@dataclass(frozen=True)
class QualityReport:
    mse: float
    snr_db: float
    psnr_db: float
    wpsnr_db: float


def quality(reference: Image, test: Image) -> QualityReport:
    err = mse(reference, test)
    return QualityReport(
        mse=err,
        snr_db=snr(reference, test),
        psnr_db=psnr_from_mse(err),
        wpsnr_db=wpsnr(reference, test),
    )
