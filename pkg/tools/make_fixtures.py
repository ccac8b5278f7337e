"""Regenerate the bundled PGM hosts in src/wmcompress/data/.

Needs scikit-image for the photographic stand-in (its public-domain
"camera" image, box-downsampled 512 -> 256). Everything else is synthetic.

    python tools/make_fixtures.py
"""
from pathlib import Path

import numpy as np

from wmcompress.pixelio import Image, from_real, write_pgm
from wmcompress.prng import splitmix64

OUT = Path(__file__).resolve().parents[1] / "src" / "wmcompress" / "data"


def checkerboard(n=64, cell=8, lo=48, hi=208):
    i, j = np.indices((n, n))
    return Image(np.where(((i // cell) + (j // cell)) % 2, hi, lo))


def gradient(n=256):
    i, j = np.indices((n, n))
    return Image((i + j) // 2)


def noise(n=64, seed=7, lo=16, hi=239):
    # uniform on [lo, hi]; stays clear of clipping for +/-16 embedding
    z = splitmix64(seed, n * n) % np.uint64(hi - lo + 1)
    return Image((z.astype(np.int64) + lo).reshape(n, n))


def flat(n=64, value=128):
    return Image(np.full((n, n), value))


def camera(n=256):
    from skimage import data

    big = data.camera().astype(np.float64)
    f = big.shape[0] // n
    return from_real(big.reshape(n, f, n, f).mean(axis=(1, 3)))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    hosts = {
        "checkerboard_64": checkerboard(),
        "gradient_256": gradient(),
        "noise_64": noise(),
        "flat_64": flat(),
        "camera_256": camera(),
    }
    for name, img in hosts.items():
        write_pgm(OUT / f"{name}.pgm", img)
        print(f"wrote {name}.pgm ({img.width}x{img.height})")


if __name__ == "__main__":
    main()
