"""SplitMix64, the pinned generator behind every watermark sequence.

For a 64-bit seed ``s`` the i-th output (i = 0, 1, ...) is::

    z = (s + (i + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB  mod 2**64
    z =  z ^ (z >> 31)

This is Steele/Lea/Flood's SplitMix64 (the seeding generator of Java's
SplittableRandom and xoshiro). A watermark chip is +1 when the top bit of
``z`` is set and -1 otherwise. Any implementation following these lines
reproduces the sequences bit for bit.
"""
import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1


def check_seed(seed):
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def splitmix64(seed, count):
    """First ``count`` SplitMix64 outputs for ``seed`` as a uint64 array."""
    seed = check_seed(seed)
    i = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + i * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def rademacher(seed, count):
    """``count`` chips in {-1.0, +1.0} drawn from the top bit of each output."""
    top = (splitmix64(seed, count) >> np.uint64(63)).astype(np.float64)
    return 2.0 * top - 1.0
