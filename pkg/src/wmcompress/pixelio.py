"""8-bit grayscale images, real-valued planes, and binary PGM (P5) I/O.

An :class:`Image` wraps an ``(height, width)`` ``uint8`` array stored
row-major. Real planes are plain ``float64`` arrays of the same shape; they
are what the transforms consume and produce.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Image",
    "PGMError",
    "BadMagicError",
    "BadMaxvalError",
    "MalformedHeaderError",
    "TruncatedDataError",
    "ZeroDimensionError",
    "NonFiniteError",
    "load_pgm",
    "save_pgm",
    "read_pgm",
    "write_pgm",
    "to_real",
    "from_real",
    "round_half_away",
]


class PGMError(ValueError):
    """Base class for PGM parse failures."""


class BadMagicError(PGMError):
    pass


class BadMaxvalError(PGMError):
    pass


class MalformedHeaderError(PGMError):
    pass


class TruncatedDataError(PGMError):
    pass


class ZeroDimensionError(PGMError):
    pass


class NonFiniteError(ValueError):
    """Raised when a real plane holding NaN or Inf is re-quantized."""


@dataclass(frozen=True, eq=False)
class Image:
    """Immutable 8-bit grayscale raster.

    ``pixels`` is a read-only ``(height, width)`` ``uint8`` array. Anything
    array-like with integer values in [0, 255] is accepted.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"image must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be >= 1, got {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (np.any(arr < 0) or np.any(arr > 255)):
                raise ValueError("pixel values must lie in [0, 255]")
            if not np.array_equal(arr, np.round(arr)):
                raise ValueError("pixel values must be integers")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_list(cls, width: int, height: int, pixels) -> "Image":
        """Build from a flat row-major sequence of ``width * height`` values."""
        values = np.asarray(pixels, dtype=np.int64)
        if values.size != width * height:
            raise ValueError(
                f"expected {width * height} pixels, got {values.size}"
            )
        return cls(values.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def tolist(self) -> list[int]:
        """Flat row-major pixel list."""
        return self.pixels.ravel().tolist()

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.pixels, other.pixels)

    def __hash__(self):
        return hash((self.shape, self.pixels.tobytes()))

    def __repr__(self):
        return f"Image({self.width}x{self.height})"


_WHITESPACE = b" \t\n\r\v\f"


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and (data[pos] in _WHITESPACE or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                while pos < n and data[pos] not in b"\r\n":
                    pos += 1
            else:
                pos += 1
        if pos >= n:
            raise MalformedHeaderError("unexpected end of header")
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def load_pgm(data: bytes) -> Image:
    """Parse a binary P5 stream with maxval 255."""
    data = bytes(data)
    if data[:2] != b"P5":
        raise BadMagicError(f"not a binary PGM (magic {data[:2]!r})")
    tokens, pos = _header_tokens(data, 4)
    if tokens[0] != b"P5":
        raise BadMagicError(f"not a binary PGM (magic {tokens[0]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise MalformedHeaderError(f"non-integer header field: {exc}") from None
    if width <= 0 or height <= 0:
        raise ZeroDimensionError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise BadMaxvalError(f"maxval must be 255, got {maxval}")
    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise TruncatedDataError("missing raster data")
    pos += 1
    needed = width * height
    raster = data[pos : pos + needed]
    if len(raster) < needed:
        raise TruncatedDataError(f"expected {needed} pixel bytes, got {len(raster)}")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
    return Image(pixels)


def save_pgm(img: Image) -> bytes:
    """Canonical P5 bytes: ``P5\\n<w> <h>\\n255\\n`` then the raster."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes(order="C")


def read_pgm(path: str | os.PathLike) -> Image:
    with open(path, "rb") as fh:
        return load_pgm(fh.read())


def write_pgm(path: str | os.PathLike, img: Image) -> None:
    with open(path, "wb") as fh:
        fh.write(save_pgm(img))


def to_real(img: Image) -> np.ndarray:
    return img.pixels.astype(np.float64)


def round_half_away(values: np.ndarray) -> np.ndarray:
    """Round to nearest integer, ties away from zero (127.5 -> 128, -0.5 -> -1)."""
    values = np.asarray(values, dtype=np.float64)
    return np.copysign(np.floor(np.abs(values) + 0.5), values)


def from_real(plane: np.ndarray) -> Image:
    """Re-quantize a real plane: round half away from zero, clamp to [0, 255]."""
    plane = np.asarray(plane, dtype=np.float64)
    if not np.all(np.isfinite(plane)):
        raise NonFiniteError("plane contains NaN or Inf")
    return Image(np.clip(round_half_away(plane), 0, 255).astype(np.uint8))
