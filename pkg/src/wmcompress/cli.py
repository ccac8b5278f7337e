"""``wmbench`` command line.

    wmbench run --image host.pgm [--thresholds 50,100] [--transform DCT2,FFT2]
                [--seed 42] [--alpha 2] [--domain SPATIAL] [--double]
                [--format csv|markdown] [--out FILE] [--config FILE]
    wmbench robustness --image host.pgm --double --alpha 3

Settings come from ``--config`` (``key = value`` lines) and are overridden by
flags. Exit codes: 0 ok, 1 config error, 2 I/O error, 3 transform/dimension
incompatibility.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import _backend
from .bench import (
    ConfigError,
    OutputFormat,
    build_config,
    emit,
    format_robustness,
    load_config_file,
    run_matrix,
    run_robustness_study,
)
from .pixelio import PGMError
from .transforms import DimensionError

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_DIMENSION = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file")
    common.add_argument("--image", help="input PGM (P5, 8-bit)")
    common.add_argument("--thresholds", help="comma-separated, strictly increasing")
    common.add_argument("--transform", action="append",
                        help="DWT2, DCT2, FFT2 (comma list or repeated)")
    common.add_argument("--levels", type=int, help="Haar decomposition levels")
    common.add_argument("--seed", help="watermark seed (64-bit unsigned)")
    common.add_argument("--seed2", help="second watermark seed (default seed + 1)")
    common.add_argument("--alpha", help="embedding strength")
    common.add_argument("--domain", help="SPATIAL or DCT_MIDBAND")
    common.add_argument("--length", help="watermark length or 'all'")
    wm = common.add_mutually_exclusive_group()
    wm.add_argument("--double", action="store_true", help="cascade two watermarks")
    wm.add_argument("--no-watermark", action="store_true", help="attack the bare host")
    common.add_argument("--tau", help="detection threshold")
    common.add_argument("--metric-reference", help="ORIGINAL or WATERMARKED")
    common.add_argument("--format", help="csv or markdown")
    common.add_argument("--out", help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="wmbench", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version",
                   version=f"%(prog)s 0.1.0 ({_backend.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="threshold x transform table")
    sub.add_parser("robustness", parents=[common], help="single vs cascaded survival")
    return p


def _settings(args) -> dict[str, str]:
    values = load_config_file(args.config) if args.config else {}
    flags = {
        "image": args.image,
        "thresholds": args.thresholds,
        "transforms": ",".join(args.transform) if args.transform else None,
        "dwt_levels": None if args.levels is None else str(args.levels),
        "seed": args.seed,
        "seed2": args.seed2,
        "alpha": args.alpha,
        "domain": args.domain,
        "length": args.length,
        "tau": args.tau,
        "metric_reference": args.metric_reference,
        "format": args.format,
        "out": args.out,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    if args.double:
        values["watermarks"] = "2"
        values.pop("double", None)
    elif args.no_watermark:
        values["watermarks"] = "0"
        values.pop("double", None)
    return values


def _write(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = build_config(_settings(args))
        if config.input_path is None:
            raise ConfigError("no input image: pass --image or set 'image' in the config")
        if args.command == "run":
            rows = run_matrix(config)
            title = f"Image: {os.path.basename(config.input_path)}"
            _write(emit(rows, config.output_format, title=title), config.output_path)
        else:
            report = run_robustness_study(config)
            _write(format_robustness(report, config.output_format).encode("utf-8"),
                   config.output_path)
    except ConfigError as exc:
        print(f"wmbench: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DimensionError as exc:
        print(f"wmbench: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (OSError, PGMError) as exc:
        print(f"wmbench: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
