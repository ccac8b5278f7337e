"""Watermark embedding under transform-threshold compression.

Embed one or two pseudo-random watermarks in an 8-bit grayscale image, attack
it by hard-thresholding DCT2 / FFT2 / Haar DWT2 coefficients, and score the
result with SNR, PSNR and NVF-weighted PSNR.
"""
from ._backend import BACKEND
from .bench import BenchConfig, BenchRow, emit, run_matrix, run_robustness_study
from .codec import AttackReport, ThresholdPolicy, compress_attack, hard_threshold, sparsity
from .metrics import QualityReport, mse, nvf, psnr, snr, wpsnr
from .pixelio import Image, from_real, load_pgm, read_pgm, save_pgm, to_real, write_pgm
from .transforms import CoefficientPlane, TransformKind, TransformSpec
from .watermark import (
    DetectionResult,
    Domain,
    WatermarkKey,
    cascade_embed,
    detect,
    embed,
    generate,
)

__version__ = "0.1.0"
