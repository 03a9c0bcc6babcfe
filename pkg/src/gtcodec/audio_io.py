"""WAV input/output on top of :mod:`scipy.io.wavfile`.

Reading accepts PCM16 or float32, mono or stereo, and skips unknown chunks.
Writing always produces canonical 44-byte-header PCM16 mono.
"""
from __future__ import annotations

import os
import struct
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.io import wavfile

from .errors import CorruptHeader, EmptyAudio, NotRiff, UnsupportedCodec

PCM16_SCALE = 32768.0


@dataclass(frozen=True, eq=False)
class Signal:
    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        x = np.array(self.samples, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(x)):
            raise ValueError("samples must be finite")
        if x.size and np.max(np.abs(x)) > 1.0:
            raise ValueError("samples must lie in [-1, 1]")
        if int(self.sample_rate) <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self):
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def read_wav(path) -> Signal:
    with open(path, "rb") as fh:
        head = fh.read(12)
    if len(head) < 12 or head[:4] not in (b"RIFF", b"RIFX") or head[8:12] != b"WAVE":
        raise NotRiff(f"{path}: not a RIFF/WAVE file")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", wavfile.WavFileWarning)
            rate, data = wavfile.read(path)
    except ValueError as exc:
        msg = str(exc)
        if "Unknown wave file format" in msg or "Unsupported" in msg:
            raise UnsupportedCodec(f"{path}: {msg}") from exc
        raise CorruptHeader(f"{path}: {msg}") from exc
    except (EOFError, IndexError, struct.error) as exc:
        raise CorruptHeader(f"{path}: {exc}") from exc
    if data.dtype == np.int16:
        x = data.astype(np.float64) / PCM16_SCALE
    elif data.dtype == np.float32:
        x = np.clip(data.astype(np.float64), -1.0, 1.0)
    else:
        raise UnsupportedCodec(f"{path}: sample type {data.dtype} (need PCM16 or float32)")
    if x.ndim == 2:
        if x.shape[1] > 2:
            raise UnsupportedCodec(f"{path}: {x.shape[1]} channels (need mono or stereo)")
        x = x.mean(axis=1)
    if x.size == 0:
        raise EmptyAudio(f"{path}: no samples")
    if rate <= 0:
        raise CorruptHeader(f"{path}: sample rate {rate}")
    return Signal(x, rate)


def to_pcm16(samples) -> np.ndarray:
    """Round half to even onto the int16 grid, clipping at the rails."""
    x = np.asarray(getattr(samples, "samples", samples), dtype=np.float64)
    return np.clip(np.rint(x * PCM16_SCALE), -32768, 32767).astype(np.int16)


def write_wav(path, signal: Signal) -> None:
    wavfile.write(os.fspath(path), signal.sample_rate, to_pcm16(signal.samples))
