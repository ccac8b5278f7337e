"""Time the compiled and numpy kernel backends side by side.

    python benchmarks/bench_kernels.py [--size 256] [--repeat 5]

Each row is the best of ``--repeat`` runs. The last row times a full default
benchmark grid (18 attacks plus metrics and detection) on a random host.
"""
import argparse
import timeit

import numpy as np

from wmcompress import _backend
from wmcompress.bench import BenchConfig, run_matrix
from wmcompress.metrics import nvf
from wmcompress.pixelio import Image
from wmcompress.transforms import dwt2_forward, dwt2_inverse, fft2_forward, fft2_inverse


def cases(size):
    rng = np.random.default_rng(0)
    x = rng.uniform(0, 255, size=(size, size))
    img = Image(np.round(x))
    fx = fft2_forward(x)
    wx = dwt2_forward(x, 3)
    return {
        "fft2 forward": lambda: fft2_forward(x),
        "fft2 inverse": lambda: fft2_inverse(fx),
        "dwt2 forward (3 levels)": lambda: dwt2_forward(x, 3),
        "dwt2 inverse (3 levels)": lambda: dwt2_inverse(wx),
        "nvf (9x9 local variance)": lambda: nvf(img),
        "full grid (18 cells)": lambda: run_matrix(BenchConfig(), img),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    names = _backend.available_backends()
    timings = {}
    for name in names:
        _backend.kernels = _backend.load_kernels(name)
        for label, fn in cases(args.size).items():
            n = 1 if label.startswith("full") else 3
            timings[label, name] = min(timeit.repeat(fn, number=n, repeat=args.repeat)) / n

    print(f"{args.size}x{args.size}, best of {args.repeat} (ms)")
    head = f"{'kernel':28s}" + "".join(f"{n:>12s}" for n in names)
    if len(names) == 2:
        head += f"{'speedup':>10s}"
    print(head)
    for label in cases(8):
        cells = [timings[label, n] * 1e3 for n in names]
        line = f"{label:28s}" + "".join(f"{c:12.2f}" for c in cells)
        if len(names) == 2:
            line += f"{cells[1] / cells[0]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
