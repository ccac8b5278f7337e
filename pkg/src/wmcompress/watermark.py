"""Spread-spectrum watermarks: generation, single/cascaded embedding, detection.

Two placements are supported:

SPATIAL
    Additive: the first ``length`` pixels (row-major) move by +/- strength.
DCT_MIDBAND
    Multiplicative on a full-frame orthonormal DCT: the ``length``
    largest-magnitude AC coefficients are scaled by (1 + strength * w).

Detection is non-blind and returns the normalized correlation between the
estimated watermark and the regenerated chips.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import prng
from .pixelio import Image, from_real, to_real
from .transforms import CoefficientPlane, TransformKind, dct2_forward, dct2_inverse

__all__ = [
    "Domain",
    "WatermarkKey",
    "DetectionResult",
    "CapacityError",
    "DEFAULT_TAU",
    "generate",
    "embed",
    "detect",
    "cascade_embed",
    "normalized_correlation",
]

DEFAULT_TAU = 0.2


class CapacityError(ValueError):
    """Watermark longer than the host can carry."""


class Domain(str, enum.Enum):
    SPATIAL = "SPATIAL"
    DCT_MIDBAND = "DCT_MIDBAND"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class WatermarkKey:
    """Everything needed to regenerate and place a watermark.

    ``length=None`` means "every available sample": all pixels for SPATIAL,
    all AC coefficients for DCT_MIDBAND.
    """

    seed: int
    strength: float
    length: int | None = None
    domain: Domain = Domain.SPATIAL

    def __post_init__(self):
        object.__setattr__(self, "seed", prng.check_seed(self.seed))
        object.__setattr__(self, "domain", Domain(self.domain))
        if not float(self.strength) > 0:
            raise ValueError(f"strength must be > 0, got {self.strength}")
        object.__setattr__(self, "strength", float(self.strength))
        if self.length is not None and int(self.length) < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")

    def capacity(self, img: Image) -> int:
        n = img.width * img.height
        return n if self.domain is Domain.SPATIAL else n - 1

    def resolved_length(self, img: Image) -> int:
        cap = self.capacity(img)
        if self.length is None:
            return cap
        if self.length > cap:
            raise CapacityError(
                f"watermark length {self.length} exceeds {cap} available samples "
                f"for {self.domain} on a {img.width}x{img.height} host"
            )
        return int(self.length)


@dataclass(frozen=True)
class DetectionResult:
    correlation: float
    detected: bool
    threshold_tau: float


def generate(key: WatermarkKey, length: int | None = None) -> np.ndarray:
    """The key's +/-1 chip sequence (``length`` overrides an open-ended key)."""
    n = key.length if length is None else length
    if n is None:
        raise ValueError("key has no fixed length; pass one explicitly")
    return prng.rademacher(key.seed, int(n))


def _select_positions(coeffs: np.ndarray, length: int) -> np.ndarray:
    # flat indices of the largest-magnitude AC coefficients; ties -> lower index
    mags = np.abs(coeffs).ravel()
    order = np.argsort(-mags, kind="stable")
    order = order[order != 0]
    return order[:length]


def embed(img: Image, key: WatermarkKey) -> Image:
    n = key.resolved_length(img)
    w = generate(key, n)
    if key.domain is Domain.SPATIAL:
        flat = to_real(img).ravel()
        flat[:n] += key.strength * w
        return from_real(flat.reshape(img.shape))
    coeffs = np.array(dct2_forward(to_real(img)).values)
    flat = coeffs.ravel()
    pos = _select_positions(coeffs, n)
    flat[pos] *= 1.0 + key.strength * w
    return from_real(dct2_inverse(CoefficientPlane(TransformKind.DCT2, coeffs)))


def normalized_correlation(residual: np.ndarray, chips: np.ndarray) -> float:
    """Cosine similarity; a zero-energy residual gives 0."""
    r = np.asarray(residual, dtype=np.float64).ravel()
    c = np.asarray(chips, dtype=np.float64).ravel()
    nr, nc = np.linalg.norm(r), np.linalg.norm(c)
    if nr == 0 or nc == 0:
        return 0.0
    return float(np.clip(np.dot(r, c) / (nr * nc), -1.0, 1.0))


def _residual(reference: Image, suspect: Image, key: WatermarkKey, n: int) -> np.ndarray:
    if key.domain is Domain.SPATIAL:
        return (to_real(suspect) - to_real(reference)).ravel()[:n]
    ref = dct2_forward(to_real(reference)).values
    sus = dct2_forward(to_real(suspect)).values
    pos = _select_positions(ref, n)
    base = ref.ravel()[pos]
    diff = sus.ravel()[pos] - base
    # relative change undoes the multiplicative embedding: (c' - c) / c ~ strength * w
    out = np.zeros(n)
    nz = base != 0
    out[nz] = diff[nz] / base[nz]
    return out


def detect(
    reference: Image, suspect: Image, key: WatermarkKey, tau: float = DEFAULT_TAU
) -> DetectionResult:
    """Non-blind correlation detector; ``reference`` is the unmarked host."""
    if reference.shape != suspect.shape:
        raise ValueError(
            f"dimension mismatch: {reference.width}x{reference.height} "
            f"vs {suspect.width}x{suspect.height}"
        )
    n = key.resolved_length(reference)
    rho = normalized_correlation(_residual(reference, suspect, key, n), generate(key, n))
    return DetectionResult(correlation=rho, detected=rho >= tau, threshold_tau=float(tau))


def cascade_embed(img: Image, key1: WatermarkKey, key2: WatermarkKey) -> Image:
    """Embed ``key1`` then ``key2`` on top of the result."""
    if key1.seed == key2.seed:
        raise ValueError("cascaded watermarks need distinct seeds")
    return embed(embed(img, key1), key2)
