"""Benchmark grid: embed watermark(s), attack at every (threshold, transform), score.

Rows come out ordered by threshold ascending, then transform in config order.
Everything is a pure function of the host pixels and the config, so repeated
runs emit byte-identical tables.
"""
from __future__ import annotations

import csv
import enum
import io
import math
import os
from dataclasses import dataclass, field

from . import metrics, watermark
from .codec import ThresholdPolicy, compress_attack
from .pixelio import Image, read_pgm
from .transforms import TransformKind, TransformSpec
from .watermark import DetectionResult, Domain, WatermarkKey

__all__ = [
    "DEFAULT_THRESHOLDS",
    "DEFAULT_TRANSFORMS",
    "ConfigError",
    "OutputFormat",
    "MetricReference",
    "BenchConfig",
    "BenchRow",
    "RobustnessCell",
    "RobustnessReport",
    "load_config_file",
    "build_config",
    "run_matrix",
    "emit",
    "csv_header",
    "run_robustness_study",
    "format_robustness",
]

DEFAULT_THRESHOLDS = (50.0, 100.0, 150.0, 200.0, 250.0, 300.0)
DEFAULT_TRANSFORMS = (TransformKind.DWT2, TransformKind.DCT2, TransformKind.FFT2)
DEFAULT_SEED = 42
DEFAULT_ALPHA = 2.0


class ConfigError(ValueError):
    pass


class OutputFormat(str, enum.Enum):
    CSV = "CSV"
    MARKDOWN = "MARKDOWN"


class MetricReference(str, enum.Enum):
    ORIGINAL = "ORIGINAL"
    WATERMARKED = "WATERMARKED"


@dataclass(frozen=True)
class BenchConfig:
    input_path: str | None = None
    thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS
    transforms: tuple[TransformKind, ...] = DEFAULT_TRANSFORMS
    dwt_levels: int = 1
    watermarks: tuple[WatermarkKey, ...] = (WatermarkKey(DEFAULT_SEED, DEFAULT_ALPHA),)
    tau: float = watermark.DEFAULT_TAU
    output_format: OutputFormat = OutputFormat.CSV
    output_path: str | None = None
    metric_reference: MetricReference = MetricReference.ORIGINAL
    preserve_dc: bool = True

    def __post_init__(self):
        ts = tuple(float(t) for t in self.thresholds)
        if not ts:
            raise ConfigError("thresholds must not be empty")
        if any(not (t >= 0 and math.isfinite(t)) for t in ts):
            raise ConfigError(f"thresholds must be finite and >= 0: {ts}")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ConfigError(f"thresholds must be strictly increasing: {ts}")
        object.__setattr__(self, "thresholds", ts)
        try:
            kinds = tuple(TransformKind(k) for k in self.transforms)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not kinds or len(set(kinds)) != len(kinds):
            raise ConfigError(f"transforms must be a non-empty set: {self.transforms}")
        object.__setattr__(self, "transforms", kinds)
        if int(self.dwt_levels) < 1:
            raise ConfigError("dwt_levels must be >= 1")
        wms = tuple(self.watermarks)
        if len(wms) > 2:
            raise ConfigError("at most two watermarks (single or cascaded)")
        if len(wms) == 2 and wms[0].seed == wms[1].seed:
            raise ConfigError("cascaded watermarks need distinct seeds")
        object.__setattr__(self, "watermarks", wms)
        object.__setattr__(self, "output_format", OutputFormat(self.output_format))
        object.__setattr__(self, "metric_reference", MetricReference(self.metric_reference))

    def specs(self) -> list[TransformSpec]:
        return [TransformSpec(k, self.dwt_levels if k is TransformKind.DWT2 else None)
                for k in self.transforms]


@dataclass(frozen=True)
class BenchRow:
    threshold: float
    transform: str
    snr_db: float
    psnr_db: float
    wpsnr_db: float
    sparsity: float
    detection: tuple[DetectionResult, ...] = ()


# ---------------------------------------------------------------- config file

_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}

CONFIG_KEYS = {
    "image", "thresholds", "transforms", "dwt_levels", "watermarks", "seed", "seed2",
    "alpha", "domain", "length", "double", "tau", "format", "out",
    "metric_reference", "preserve_dc",
}


def load_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.lower().replace("-", "_")
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


def _split(value: str) -> list[str]:
    return [p for p in (s.strip() for s in value.replace(";", ",").split(",")) if p]


def build_config(values: dict[str, str]) -> BenchConfig:
    """Turn merged string settings (file, then flag overrides) into a config."""
    try:
        kw = {}
        if "image" in values:
            kw["input_path"] = values["image"]
        if "thresholds" in values:
            kw["thresholds"] = tuple(float(t) for t in _split(values["thresholds"]))
        if "transforms" in values:
            kw["transforms"] = tuple(TransformKind(t.upper()) for t in _split(values["transforms"]))
        if "dwt_levels" in values:
            kw["dwt_levels"] = int(values["dwt_levels"])
        if "tau" in values:
            kw["tau"] = float(values["tau"])
        if "format" in values:
            kw["output_format"] = OutputFormat(values["format"].upper())
        if "out" in values and values["out"] not in ("", "-"):
            kw["output_path"] = values["out"]
        if "metric_reference" in values:
            kw["metric_reference"] = MetricReference(values["metric_reference"].upper())
        if "preserve_dc" in values:
            kw["preserve_dc"] = _BOOL[values["preserve_dc"].lower()]

        count = 1
        if "watermarks" in values:
            count = int(values["watermarks"])
        if "double" in values and _BOOL[values["double"].lower()]:
            count = 2
        if count not in (0, 1, 2):
            raise ConfigError(f"watermarks must be 0, 1 or 2, got {count}")
        seed = int(values.get("seed", str(DEFAULT_SEED)), 0)
        seed2 = int(values["seed2"], 0) if "seed2" in values else (seed + 1) % (1 << 64)
        alpha = float(values.get("alpha", DEFAULT_ALPHA))
        domain = Domain(values.get("domain", "SPATIAL").upper())
        length = values.get("length", "all").strip().lower()
        length = None if length in ("all", "") else int(length)
        keys = [WatermarkKey(s, alpha, length, domain) for s in (seed, seed2)[:count]]
        kw["watermarks"] = tuple(keys)
        return BenchConfig(**kw)
    except ConfigError:
        raise
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from None


# ---------------------------------------------------------------- grid

def _load_host(config: BenchConfig, host: Image | None) -> Image:
    if host is not None:
        return host
    if config.input_path is None:
        raise ConfigError("no input image configured")
    return read_pgm(config.input_path)


def _embed_all(host: Image, keys) -> Image:
    marked = host
    for key in keys:
        marked = watermark.embed(marked, key)
    return marked


def run_matrix(config: BenchConfig, host: Image | None = None) -> list[BenchRow]:
    """Run the full (threshold x transform) grid for one host image."""
    host = _load_host(config, host)
    specs = config.specs()
    for spec in specs:
        spec.check_shape(host.shape)
    marked = _embed_all(host, config.watermarks)
    rows = []
    for t in config.thresholds:
        policy = ThresholdPolicy(t, config.preserve_dc)
        for spec in specs:
            report = compress_attack(marked, spec, policy)
            if config.metric_reference is MetricReference.WATERMARKED:
                snr_db, psnr_db, wpsnr_db = report.snr_db, report.psnr_db, report.wpsnr_db
            else:
                q = metrics.quality(host, report.output)
                snr_db, psnr_db, wpsnr_db = q.snr_db, q.psnr_db, q.wpsnr_db
            det = tuple(watermark.detect(host, report.output, k, config.tau)
                        for k in config.watermarks)
            rows.append(BenchRow(t, str(spec), snr_db, psnr_db, wpsnr_db, report.sparsity, det))
    return rows


# ---------------------------------------------------------------- emitters

def fmt_number(x: float, places: int) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{places}f}"


def fmt_threshold(t: float) -> str:
    return str(int(t)) if float(t).is_integer() else repr(float(t))


def csv_header(n_watermarks: int) -> list[str]:
    cols = ["threshold", "transform", "snr_db", "psnr_db", "wpsnr_db", "sparsity"]
    for i in range(1, n_watermarks + 1):
        cols += [f"wm{i}_rho", f"wm{i}_detected"]
    return cols


def _cells(row: BenchRow) -> list[str]:
    cells = [
        fmt_threshold(row.threshold),
        row.transform,
        fmt_number(row.snr_db, 4),
        fmt_number(row.psnr_db, 2),
        fmt_number(row.wpsnr_db, 4),
        fmt_number(row.sparsity, 4),
    ]
    for d in row.detection:
        cells += [fmt_number(d.correlation, 4), "true" if d.detected else "false"]
    return cells


def _to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(len(rows[0].detection)))
    writer.writerows(_cells(r) for r in rows)
    return buf.getvalue()


def _to_markdown(rows, title: str | None) -> str:
    n_wm = len(rows[0].detection)
    head = ["Threshold Level", "Transform", "SNR", "PSNR", "WPSNR", "Sparsity"]
    for i in range(1, n_wm + 1):
        head += [f"WM{i} rho", f"WM{i} detected"]
    lines = []
    if title:
        lines += [f"**{title}**", ""]
    lines.append("| " + " | ".join(head) + " |")
    lines.append("|" + "|".join(["---:", ":---"] + ["---:"] * (len(head) - 2)) + "|")
    previous = None
    for r in rows:
        cells = _cells(r)
        if r.threshold == previous:
            cells[0] = ""
        previous = r.threshold
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit(rows, fmt=OutputFormat.CSV, destination=None, title: str | None = None) -> bytes:
    """Render rows as CSV or Markdown; write to ``destination`` when given.

    ``destination`` may be a path or a binary file object. Returns the bytes.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    if len({len(r.detection) for r in rows}) != 1:
        raise ValueError("rows disagree on the number of watermarks")
    fmt = OutputFormat(fmt)
    text = _to_csv(rows) if fmt is OutputFormat.CSV else _to_markdown(rows, title)
    data = text.encode("utf-8")
    if destination is not None:
        if isinstance(destination, (str, os.PathLike)):
            with open(destination, "wb") as fh:
                fh.write(data)
        else:
            destination.write(data)
    return data


# ---------------------------------------------------------------- robustness

@dataclass(frozen=True)
class RobustnessCell:
    threshold: float
    transform: str
    single_rho: tuple[float, ...]
    cascade_rho: tuple[float, ...] | None = None


@dataclass
class RobustnessReport:
    """Per-cell correlations plus survival thresholds.

    ``single_rho[i]`` is watermark i embedded alone; ``cascade_rho[i]`` is the
    same watermark inside the two-key cascade (None with one key).
    """

    thresholds: tuple[float, ...]
    transforms: tuple[str, ...]
    tau: float
    cells: list[RobustnessCell] = field(default_factory=list)

    @property
    def n_watermarks(self) -> int:
        return len(self.cells[0].single_rho)

    @property
    def has_cascade(self) -> bool:
        return self.cells[0].cascade_rho is not None

    def survival_threshold(self, transform: str, wm: int, cascade: bool = False) -> float | None:
        """Largest grid threshold at which watermark ``wm`` is still detected."""
        best = None
        for c in self.cells:
            if c.transform != transform:
                continue
            rho = (c.cascade_rho if cascade else c.single_rho)[wm]
            if rho >= self.tau:
                best = c.threshold
        return best

    def cascade_violations(self, margin: float = 0.1) -> list[tuple[float, str, int]]:
        """Cells where a watermark clears tau + margin alone but is lost in the cascade."""
        if not self.has_cascade:
            return []
        bad = []
        for c in self.cells:
            for i, (s, d) in enumerate(zip(c.single_rho, c.cascade_rho)):
                if s >= self.tau + margin and d < self.tau:
                    bad.append((c.threshold, c.transform, i))
        return bad


def run_robustness_study(config: BenchConfig, host: Image | None = None) -> RobustnessReport:
    """Detection correlation over the grid, single vs cascaded."""
    if not 1 <= len(config.watermarks) <= 2:
        raise ConfigError("robustness study needs one or two watermarks")
    host = _load_host(config, host)
    specs = config.specs()
    for spec in specs:
        spec.check_shape(host.shape)
    keys = config.watermarks
    singles = [watermark.embed(host, k) for k in keys]
    cascaded = _embed_all(host, keys) if len(keys) == 2 else None
    report = RobustnessReport(config.thresholds, tuple(str(s) for s in specs), config.tau)
    for t in config.thresholds:
        policy = ThresholdPolicy(t, config.preserve_dc)
        for spec in specs:
            single = tuple(
                watermark.detect(host, compress_attack(m, spec, policy).output, k).correlation
                for m, k in zip(singles, keys)
            )
            cascade = None
            if cascaded is not None:
                out = compress_attack(cascaded, spec, policy).output
                cascade = tuple(watermark.detect(host, out, k).correlation for k in keys)
            report.cells.append(RobustnessCell(t, str(spec), single, cascade))
    return report


def format_robustness(report: RobustnessReport, fmt=OutputFormat.MARKDOWN) -> str:
    """Comparison table followed by the per-transform survival summary."""
    fmt = OutputFormat(fmt)
    n = report.n_watermarks
    head = ["threshold", "transform"]
    for i in range(1, n + 1):
        head.append(f"wm{i}_single_rho")
        if report.has_cascade:
            head.append(f"wm{i}_cascade_rho")
    body = []
    for c in report.cells:
        cells = [fmt_threshold(c.threshold), c.transform]
        for i in range(n):
            cells.append(fmt_number(c.single_rho[i], 4))
            if report.has_cascade:
                cells.append(fmt_number(c.cascade_rho[i], 4))
        body.append(cells)

    surv_head = ["transform"]
    for i in range(1, n + 1):
        surv_head.append(f"wm{i}_single_survival")
        if report.has_cascade:
            surv_head.append(f"wm{i}_cascade_survival")
    surv = []
    for tr in report.transforms:
        cells = [tr]
        for i in range(n):
            variants = (False, True) if report.has_cascade else (False,)
            for cascade in variants:
                s = report.survival_threshold(tr, i, cascade)
                cells.append("none" if s is None else fmt_threshold(s))
        surv.append(cells)

    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(body)
        buf.write("\n")
        w.writerow(surv_head)
        w.writerows(surv)
        return buf.getvalue()

    def table(h, rows):
        out = ["| " + " | ".join(h) + " |", "|" + "|".join(["---"] * len(h)) + "|"]
        out += ["| " + " | ".join(r) + " |" for r in rows]
        return out

    lines = [f"Detection correlation (tau = {report.tau:g})", ""]
    lines += table(head, body)
    lines += ["", "Survival threshold (largest threshold still detected)", ""]
    lines += table(surv_head, surv)
    if report.has_cascade:
        bad = report.cascade_violations()
        lines += ["", f"Cascade cells lost despite single margin >= tau + 0.1: {len(bad)}"]
    return "\n".join(lines) + "\n"
