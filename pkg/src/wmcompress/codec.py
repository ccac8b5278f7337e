"""Hard-threshold transform coding used as the compression attack."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import metrics, transforms
from .pixelio import Image, from_real, to_real
from .transforms import CoefficientPlane, TransformKind, TransformSpec

__all__ = [
    "ThresholdPolicy",
    "AttackReport",
    "protected_region",
    "hard_threshold",
    "sparsity",
    "compress_attack",
]


@dataclass(frozen=True)
class ThresholdPolicy:
    threshold: float
    preserve_dc: bool = True

    def __post_init__(self):
        t = float(self.threshold)
        if not t >= 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")
        object.__setattr__(self, "threshold", t)


@dataclass(frozen=True)
class AttackReport:
    output: Image
    sparsity: float
    psnr_db: float
    snr_db: float
    wpsnr_db: float


def protected_region(coeffs: CoefficientPlane) -> tuple[slice, slice]:
    """Index of the coefficients ``preserve_dc`` exempts from thresholding."""
    if coeffs.kind is TransformKind.DWT2 and coeffs.levels:
        h, w = coeffs.shape
        return slice(0, h >> coeffs.levels), slice(0, w >> coeffs.levels)
    return slice(0, 1), slice(0, 1)


def hard_threshold(coeffs: CoefficientPlane, policy: ThresholdPolicy) -> CoefficientPlane:
    """Zero every coefficient with magnitude strictly below the threshold.

    Complex coefficients are compared by modulus. With ``preserve_dc`` the DC
    coefficient of DCT2/FFT2, or the whole deepest LL band of DWT2, is kept.
    """
    values = np.array(coeffs.values)
    drop = np.abs(values) < policy.threshold
    if policy.preserve_dc:
        drop[protected_region(coeffs)] = False
    values[drop] = 0
    return coeffs.with_values(values)


def sparsity(coeffs: CoefficientPlane) -> float:
    """Fraction of coefficients that are exactly zero."""
    return float(np.count_nonzero(coeffs.values == 0)) / coeffs.values.size


def compress_attack(img: Image, spec: TransformSpec, policy: ThresholdPolicy) -> AttackReport:
    """Forward transform, hard threshold, inverse, re-quantize; metrics vs ``img``."""
    spec.check_shape(img.shape)
    kept = hard_threshold(transforms.forward(to_real(img), spec), policy)
    out = from_real(transforms.inverse(kept))
    q = metrics.quality(img, out)
    return AttackReport(
        output=out,
        sparsity=sparsity(kept),
        psnr_db=q.psnr_db,
        snr_db=q.snr_db,
        wpsnr_db=q.wpsnr_db,
    )
