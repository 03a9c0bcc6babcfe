"""Experiment grid: every file x transform x frame size x compression ratio."""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import signal as sps

from .audio_io import Signal, read_wav, write_wav
from .codec import CodecConfig, compress_signal, decompress_signal, frame_signal
from .errors import EmptyCorpus, GTCodecError, NoRows
from .metrics import psnr
from .transforms import KIND_NAMES, TransformKind, basis_for, forward

log = logging.getLogger(__name__)

SPEECH_W_SECOND = 0.1
MUSIC_W_SECOND = 0.3
CSV_HEADER = ("file", "transform", "frame_size", "cr", "psnr_db", "erp_pct")
MEAN_FILE = "MEAN"


@dataclass(frozen=True)
class BenchRow:
    file: str
    kind: TransformKind
    frame_size: int
    cr: int
    psnr_db: float
    erp_pct: float
    error: Optional[str] = None

    @property
    def sort_key(self):
        return (self.file == MEAN_FILE, self.file, self.kind.wire_id, self.frame_size, self.cr)


@dataclass(frozen=True)
class GridConfig:
    kinds: tuple[str, ...] = KIND_NAMES
    frame_sizes: tuple[int, ...] = (16, 64, 256, 512)
    crs: tuple[int, ...] = (2, 4, 8, 16)
    gt1_w_second: float = SPEECH_W_SECOND

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(k.upper() for k in self.kinds))
        object.__setattr__(self, "frame_sizes", tuple(sorted(set(self.frame_sizes))))
        object.__setattr__(self, "crs", tuple(sorted(set(self.crs))))
        for n in self.frame_sizes:
            for cr in self.crs:
                if cr < 1 or n % cr:
                    raise ValueError(f"cr={cr} does not divide frame_size={n}")
        self.transform_kinds()  # validates names

    @classmethod
    def music(cls, **kw) -> "GridConfig":
        return cls(gt1_w_second=MUSIC_W_SECOND, **kw)

    def transform_kinds(self) -> list[TransformKind]:
        kinds = [TransformKind(k, self.gt1_w_second if k == "GT1" else None) for k in self.kinds]
        return sorted(set(kinds), key=lambda k: k.wire_id)


@dataclass
class GridResult:
    rows: list[BenchRow]
    means: list[BenchRow]
    skipped: dict[str, str] = field(default_factory=dict)

    def all_rows(self) -> list[BenchRow]:
        return self.rows + self.means


def _file_rows(name: str, sig: Signal, config: GridConfig) -> list[BenchRow]:
    rows = []
    for kind in config.transform_kinds():
        for n in config.frame_sizes:
            try:
                basis = basis_for(kind, n)
                frames, _ = frame_signal(sig, n)
                total = float(np.sum(forward(basis, frames) ** 2))
            except GTCodecError as exc:
                log.warning("%s: %s n=%d failed: %s", name, kind, n, exc)
                rows += [BenchRow(name, kind, n, cr, math.nan, math.nan, str(exc)) for cr in config.crs]
                continue
            for cr in config.crs:
                try:
                    stream = compress_signal(sig, CodecConfig(kind, n, cr), basis)
                    recon = decompress_signal(stream, basis)
                    p = psnr(sig.samples, recon)
                    kept = float(np.sum(stream.values**2))
                    erp = 100.0 if kept == total else 100.0 * kept / total
                    rows.append(BenchRow(name, kind, n, cr, p, erp))
                except GTCodecError as exc:
                    log.warning("%s: %s n=%d cr=%d failed: %s", name, kind, n, cr, exc)
                    rows.append(BenchRow(name, kind, n, cr, math.nan, math.nan, str(exc)))
    return rows


def _mean(vals: list[float]) -> float:
    vals = [v for v in vals if not math.isnan(v)]
    return float(np.mean(vals)) if vals else math.nan


def mean_rows(rows: Sequence[BenchRow]) -> list[BenchRow]:
    """One row per (kind, frame_size, cr). PSNR is averaged in dB."""
    groups: dict[tuple, list[BenchRow]] = {}
    for r in rows:
        groups.setdefault((r.kind, r.frame_size, r.cr), []).append(r)
    out = [
        BenchRow(MEAN_FILE, kind, n, cr, _mean([r.psnr_db for r in g]), _mean([r.erp_pct for r in g]))
        for (kind, n, cr), g in groups.items()
    ]
    return sorted(out, key=lambda r: r.sort_key)


def corpus_files(corpus_dir) -> list[Path]:
    root = Path(corpus_dir)
    if not root.is_dir():
        raise EmptyCorpus(f"{root} is not a directory")
    return sorted(p for p in root.iterdir() if p.is_file() and p.suffix.lower() == ".wav")


def run_grid(corpus_dir, config: Optional[GridConfig] = None) -> GridResult:
    config = config or GridConfig()
    files = corpus_files(corpus_dir)
    if not files:
        raise EmptyCorpus(f"no .wav files in {corpus_dir}")
    rows: list[BenchRow] = []
    skipped: dict[str, str] = {}
    for path in files:
        try:
            sig = read_wav(path)
        except (GTCodecError, OSError) as exc:
            log.warning("skipping %s: %s", path.name, exc)
            skipped[path.name] = str(exc)
            continue
        rows += _file_rows(path.name, sig, config)
    if not rows:
        raise EmptyCorpus(f"no readable .wav files in {corpus_dir}")
    rows.sort(key=lambda r: r.sort_key)
    return GridResult(rows, mean_rows(rows), skipped)


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return f"{v:.4f}"


def format_row(row: BenchRow) -> list[str]:
    return [row.file, row.kind.name, str(row.frame_size), str(row.cr), _fmt(row.psnr_db), _fmt(row.erp_pct)]


def emit_csv(rows: Iterable[BenchRow], out_path) -> None:
    rows = list(rows)
    if not rows:
        raise NoRows("nothing to write")
    with open(out_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(format_row(r) for r in rows)


def synthesize_corpus(
    out_dir,
    n_files: int = 10,
    seconds: float = 5.0,
    sample_rate: int = 16000,
    style: str = "speech",
    seed: int = 0,
) -> list[Path]:
    """Write deterministic speech- or music-like PCM16 test files.

    Speech-like files are AR-filtered noise bursts and pitched harmonic
    segments under a syllable-rate envelope. Music-like files are decaying
    harmonic notes. Neither aims at realism. They are smooth, correlated
    signals for exercising the grid when no real corpus is available.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    n = int(seconds * sample_rate)
    t = np.arange(n) / sample_rate
    paths = []
    for i in range(n_files):
        if style == "speech":
            x = _speech_like(rng, t, sample_rate)
        elif style == "music":
            x = _music_like(rng, t, sample_rate)
        else:
            raise ValueError(f"unknown style {style!r}")
        x = 0.8 * x / np.max(np.abs(x))
        path = out / f"{style}_{i:02d}.wav"
        write_wav(path, Signal(x, sample_rate))
        paths.append(path)
    return paths


def _speech_like(rng, t, fs):
    n = t.size
    f0 = rng.uniform(90, 220) * (1 + 0.1 * np.sin(2 * np.pi * rng.uniform(0.5, 2) * t))
    phase = 2 * np.cumsum(np.pi * f0 / fs)
    voiced = sum(np.sin(h * phase) / h for h in range(1, 16))
    a1, a2 = rng.uniform(1.2, 1.7), -rng.uniform(0.6, 0.85)
    noise = sps.lfilter([1.0], [1.0, -a1, -a2], rng.standard_normal(n))
    noise /= np.max(np.abs(noise))
    syll = np.clip(np.sin(2 * np.pi * rng.uniform(3, 5) * t + rng.uniform(0, np.pi)), 0, None) ** 2
    gate = (np.sin(2 * np.pi * rng.uniform(0.3, 0.7) * t) > -0.3).astype(float)
    gate = np.convolve(gate, np.hanning(int(0.02 * fs)) / np.sum(np.hanning(int(0.02 * fs))), "same")
    mix = rng.uniform(0.5, 0.8)
    return syll * (mix * voiced / 4 + (1 - mix) * noise) * gate + 1e-3 * rng.standard_normal(n)


def _music_like(rng, t, fs):
    n = t.size
    x = np.zeros(n)
    note_len = rng.uniform(0.2, 0.5)
    starts = np.arange(0, t[-1], note_len)
    for s0 in starts:
        f = 110 * 2 ** (rng.integers(0, 36) / 12)
        seg = t >= s0
        tau = t[seg] - s0
        env = np.exp(-tau / rng.uniform(0.3, 1.0))
        for h in range(1, 8):
            if h * f < fs / 2:
                x[seg] += env * np.sin(2 * np.pi * h * f * tau) / h**1.5
    return x + 1e-4 * rng.standard_normal(n)
