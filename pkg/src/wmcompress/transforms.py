"""Forward/inverse 2-D DCT-II, radix-2 FFT and multi-level Haar DWT.

Normalizations:

* DCT2 is orthonormal (basis scale sqrt(1/N) for k = 0, sqrt(2/N) otherwise).
* FFT2 forward is unnormalized (DC = sum of pixels); the inverse divides by H*W.
* DWT2 is the orthonormal Haar pyramid. Level k's LL band occupies the
  top-left (H/2^k, W/2^k) block. Within each level the top-right quadrant holds
  the horizontal-highpass/vertical-lowpass band, bottom-left the
  horizontal-lowpass/vertical-highpass band and bottom-right HH.

In every layout the DC (or deepest LL) coefficient sits at index (0, 0).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _backend

__all__ = [
    "TransformKind",
    "TransformSpec",
    "CoefficientPlane",
    "TransformError",
    "DimensionError",
    "KindMismatchError",
    "ImaginaryResidueError",
    "dct2_forward",
    "dct2_inverse",
    "fft2_forward",
    "fft2_inverse",
    "dwt2_forward",
    "dwt2_inverse",
    "forward",
    "inverse",
]

IMAG_TOLERANCE = 1e-6


class TransformError(ValueError):
    pass


class DimensionError(TransformError):
    """Input dimensions are incompatible with the requested transform."""


class KindMismatchError(TransformError):
    pass


class ImaginaryResidueError(TransformError):
    """Inverse FFT left an imaginary part above tolerance (broken symmetry)."""


class TransformKind(str, enum.Enum):
    DCT2 = "DCT2"
    FFT2 = "FFT2"
    DWT2 = "DWT2"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TransformSpec:
    kind: TransformKind
    dwt_levels: int | None = None

    def __post_init__(self):
        kind = TransformKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is TransformKind.DWT2:
            levels = 1 if self.dwt_levels is None else int(self.dwt_levels)
            if levels < 1:
                raise ValueError("dwt_levels must be >= 1")
            object.__setattr__(self, "dwt_levels", levels)
        elif self.dwt_levels is not None:
            raise ValueError(f"dwt_levels only applies to DWT2, not {kind}")

    @classmethod
    def parse(cls, name: str, dwt_levels: int = 1) -> "TransformSpec":
        kind = TransformKind(name.strip().upper())
        return cls(kind, dwt_levels if kind is TransformKind.DWT2 else None)

    def check_shape(self, shape: tuple[int, int]) -> None:
        """Raise :class:`DimensionError` if ``shape`` is unusable for this spec."""
        h, w = shape
        if self.kind is TransformKind.FFT2:
            if not (_is_pow2(h) and _is_pow2(w)):
                raise DimensionError(f"FFT2 needs power-of-two dimensions, got {w}x{h}")
        elif self.kind is TransformKind.DWT2:
            step = 1 << self.dwt_levels
            if h % step or w % step:
                raise DimensionError(
                    f"DWT2 with {self.dwt_levels} level(s) needs dimensions divisible "
                    f"by {step}, got {w}x{h}"
                )

    def __str__(self):
        return self.kind.value


@dataclass(frozen=True, eq=False)
class CoefficientPlane:
    """Transform coefficients, same shape as the source plane.

    ``values`` is float64 for DCT2/DWT2 and complex128 for FFT2.
    """

    kind: TransformKind
    values: np.ndarray
    levels: int | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "kind", TransformKind(self.kind))
        dtype = np.complex128 if self.kind is TransformKind.FFT2 else np.float64
        values = np.array(self.values, dtype=dtype)
        if values.ndim != 2:
            raise ValueError("coefficient plane must be 2-D")
        if not np.all(np.isfinite(values)):
            raise ValueError("coefficient plane contains NaN or Inf")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def shape(self):
        return self.values.shape

    def with_values(self, values) -> "CoefficientPlane":
        return CoefficientPlane(self.kind, values, self.levels)


def _is_pow2(n: int) -> bool:
    return n >= 1 and not (n & (n - 1))


def _as_plane(plane) -> np.ndarray:
    arr = np.asarray(plane, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D plane, got shape {arr.shape}")
    return arr


def _expect(coeffs: CoefficientPlane, kind: TransformKind) -> None:
    if coeffs.kind is not kind:
        raise KindMismatchError(f"expected {kind} coefficients, got {coeffs.kind}")


@lru_cache(maxsize=32)
def dct_matrix(n: int) -> np.ndarray:
    """Orthonormal DCT-II basis, rows indexed by frequency."""
    k = np.arange(n)[:, None]
    i = np.arange(n)[None, :]
    m = np.cos(np.pi * (2 * i + 1) * k / (2 * n)) * np.sqrt(2.0 / n)
    m[0, :] = np.sqrt(1.0 / n)
    m.flags.writeable = False
    return m


def dct2_forward(plane) -> CoefficientPlane:
    x = _as_plane(plane)
    ch, cw = dct_matrix(x.shape[0]), dct_matrix(x.shape[1])
    return CoefficientPlane(TransformKind.DCT2, ch @ x @ cw.T)


def dct2_inverse(coeffs: CoefficientPlane) -> np.ndarray:
    _expect(coeffs, TransformKind.DCT2)
    c = coeffs.values
    ch, cw = dct_matrix(c.shape[0]), dct_matrix(c.shape[1])
    return ch.T @ c @ cw


def _fft2(x: np.ndarray, inverse: bool) -> np.ndarray:
    k = _backend.kernels
    rows = k.fft_rows(x, inverse)
    return np.ascontiguousarray(k.fft_rows(np.ascontiguousarray(rows.T), inverse).T)


def fft2_forward(plane) -> CoefficientPlane:
    x = _as_plane(plane)
    TransformSpec(TransformKind.FFT2).check_shape(x.shape)
    return CoefficientPlane(TransformKind.FFT2, _fft2(x, inverse=False))


def fft2_inverse(coeffs: CoefficientPlane) -> np.ndarray:
    _expect(coeffs, TransformKind.FFT2)
    TransformSpec(TransformKind.FFT2).check_shape(coeffs.shape)
    h, w = coeffs.shape
    z = _fft2(coeffs.values, inverse=True) / (h * w)
    residue = float(np.max(np.abs(z.imag)))
    if residue >= IMAG_TOLERANCE:
        raise ImaginaryResidueError(f"imaginary residue {residue:.3g} exceeds {IMAG_TOLERANCE}")
    return z.real.copy()


def dwt2_forward(plane, levels: int = 1) -> CoefficientPlane:
    x = _as_plane(plane)
    spec = TransformSpec(TransformKind.DWT2, levels)
    spec.check_shape(x.shape)
    values = _backend.kernels.haar_forward(x, spec.dwt_levels)
    return CoefficientPlane(TransformKind.DWT2, values, spec.dwt_levels)


def dwt2_inverse(coeffs: CoefficientPlane, levels: int | None = None) -> np.ndarray:
    _expect(coeffs, TransformKind.DWT2)
    if levels is None:
        levels = coeffs.levels
    elif coeffs.levels is not None and levels != coeffs.levels:
        raise KindMismatchError(
            f"coefficients hold {coeffs.levels} level(s), asked to invert {levels}"
        )
    spec = TransformSpec(TransformKind.DWT2, levels)
    spec.check_shape(coeffs.shape)
    return _backend.kernels.haar_inverse(coeffs.values, spec.dwt_levels)


def forward(plane, spec: TransformSpec) -> CoefficientPlane:
    if spec.kind is TransformKind.DCT2:
        return dct2_forward(plane)
    if spec.kind is TransformKind.FFT2:
        return fft2_forward(plane)
    return dwt2_forward(plane, spec.dwt_levels)


def inverse(coeffs: CoefficientPlane) -> np.ndarray:
    if coeffs.kind is TransformKind.DCT2:
        return dct2_inverse(coeffs)
    if coeffs.kind is TransformKind.FFT2:
        return fft2_inverse(coeffs)
    return dwt2_inverse(coeffs)
