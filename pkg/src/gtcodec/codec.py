"""Frame-wise sparse transform coding and the ``GTAC`` container.

Container layout, little-endian::

    magic "GTAC" | version u8 | transform id u8 | frame_size u16 | keep_k u16 |
    sample_rate u32 | original_length u64 | w_second f32 |
    frames * keep_k * (index u16, value f64)

The frame count is not stored. It is ``ceil(original_length / frame_size)``.
"""
from __future__ import annotations

import math
import struct
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    BadMagic,
    CorruptFrame,
    DimensionMismatch,
    EmptySignal,
    HeaderMismatch,
    InvalidConfig,
    InvalidK,
    InvalidSize,
    MalformedStream,
    TruncatedStream,
    UnsupportedVersion,
)
from .transforms import OrthonormalBasis, TransformKind, basis_for, forward, inverse

MAGIC = b"GTAC"
VERSION = 1
HEADER = struct.Struct("<4sBBHHIQf")
RECORD = np.dtype([("index", "<u2"), ("value", "<f8")])
STANDARD_FRAME_SIZES = (16, 64, 256, 512)
_U16_MAX = 0xFFFF


@dataclass(frozen=True, eq=False)
class SparseCoefficients:
    """The kept ``(index, value)`` pairs of one length-``n`` coefficient vector."""

    n: int
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).reshape(-1)
        val = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if idx.shape != val.shape:
            raise DimensionMismatch("indices and values differ in length")
        if idx.size and (idx[0] < 0 or idx[-1] >= self.n or np.any(np.diff(idx) <= 0)):
            raise CorruptFrame("indices must be strictly increasing and lie in [0, n)")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @property
    def k(self) -> int:
        return self.indices.size

    def pairs(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    def __eq__(self, other):
        if not isinstance(other, SparseCoefficients):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indices, other.indices)
            and self.values.tobytes() == other.values.tobytes()
        )


@dataclass(frozen=True)
class CodecConfig:
    kind: TransformKind
    frame_size: int
    cr: int

    def __post_init__(self):
        if self.frame_size < 3:
            raise InvalidSize(f"frame_size must be >= 3, got {self.frame_size}")
        if self.frame_size > _U16_MAX:
            raise InvalidSize(f"frame_size must fit in u16, got {self.frame_size}")
        if self.cr < 1 or self.frame_size % self.cr:
            raise InvalidConfig(f"cr={self.cr} does not divide frame_size={self.frame_size}")
        if self.frame_size not in STANDARD_FRAME_SIZES:
            warnings.warn(f"non-standard frame size {self.frame_size}", stacklevel=3)

    @property
    def k(self) -> int:
        return self.frame_size // self.cr


@dataclass(frozen=True, eq=False)
class CompressedStream:
    kind: TransformKind
    frame_size: int
    keep_k: int
    sample_rate: int
    original_length: int
    indices: np.ndarray  # (frames, keep_k), ascending per row
    values: np.ndarray  # (frames, keep_k) float64

    @property
    def n_frames(self) -> int:
        return self.indices.shape[0]

    @property
    def w_second(self) -> float:
        return self.kind.w_second or 0.0

    @property
    def pad_length(self) -> int:
        return self.n_frames * self.frame_size - self.original_length

    def frames(self) -> list[SparseCoefficients]:
        return [
            SparseCoefficients(self.frame_size, i, v) for i, v in zip(self.indices, self.values)
        ]

    def __eq__(self, other):
        if not isinstance(other, CompressedStream):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.frame_size == other.frame_size
            and self.keep_k == other.keep_k
            and self.sample_rate == other.sample_rate
            and self.original_length == other.original_length
            and np.array_equal(self.indices, other.indices)
            and np.asarray(self.values, "<f8").tobytes() == np.asarray(other.values, "<f8").tobytes()
        )


def frame_signal(signal, frame_size: int) -> tuple[np.ndarray, int]:
    """Split into non-overlapping rows of ``frame_size``, zero-padding the tail."""
    x = np.asarray(getattr(signal, "samples", signal), dtype=np.float64).reshape(-1)
    if x.size == 0:
        raise EmptySignal("cannot frame an empty signal")
    if frame_size < 3:
        raise InvalidSize(f"frame_size must be >= 3, got {frame_size}")
    n_frames = -(-x.size // frame_size)
    pad = n_frames * frame_size - x.size
    return np.concatenate([x, np.zeros(pad)]).reshape(n_frames, frame_size), pad


def top_k_indices(coeffs, k: int) -> np.ndarray:
    """Ascending indices of the ``k`` largest-magnitude entries along the last axis.

    Ties go to the lower index.
    """
    c = np.asarray(coeffs, dtype=np.float64)
    n = c.shape[-1]
    if not 1 <= k <= n:
        raise InvalidK(f"k must lie in [1, {n}], got {k}")
    # stable sort on -|c| puts equal magnitudes in index order
    order = np.argsort(-np.abs(c), axis=-1, kind="stable")[..., :k]
    return np.sort(order, axis=-1)


def keep_top_k(coeffs, k: int) -> SparseCoefficients:
    c = np.asarray(coeffs, dtype=np.float64).reshape(-1)
    idx = top_k_indices(c, k)
    return SparseCoefficients(c.size, idx, c[idx])


def densify(sparse: SparseCoefficients) -> np.ndarray:
    out = np.zeros(sparse.n)
    out[sparse.indices] = sparse.values
    return out


def _resolve_basis(kind: TransformKind, n: int, basis: Optional[OrthonormalBasis]):
    if basis is None:
        return basis_for(kind, n)
    if basis.kind != kind or basis.n != n:
        raise HeaderMismatch(f"basis ({basis.kind}, n={basis.n}) does not match ({kind}, n={n})")
    return basis


def compress_signal(signal, config: CodecConfig, basis=None, sample_rate=None) -> CompressedStream:
    """Transform every frame and keep its ``config.k`` largest coefficients.

    ``signal`` is a sample array or an :class:`~gtcodec.audio_io.Signal`.
    ``sample_rate`` defaults to the signal's own rate, or 0 for bare arrays.
    """
    basis = _resolve_basis(config.kind, config.frame_size, basis)
    if sample_rate is None:
        sample_rate = getattr(signal, "sample_rate", 0)
    frames, pad = frame_signal(signal, config.frame_size)
    coeffs = forward(basis, frames)
    idx = top_k_indices(coeffs, config.k)
    return CompressedStream(
        kind=config.kind,
        frame_size=config.frame_size,
        keep_k=config.k,
        sample_rate=int(sample_rate),
        original_length=frames.size - pad,
        indices=idx.astype(np.uint16),
        values=np.take_along_axis(coeffs, idx, axis=-1),
    )


def decompress_signal(stream: CompressedStream, basis=None) -> np.ndarray:
    if stream.n_frames == 0 or stream.original_length == 0:
        raise MalformedStream("stream holds no frames")
    basis = _resolve_basis(stream.kind, stream.frame_size, basis)
    dense = np.zeros((stream.n_frames, stream.frame_size))
    np.put_along_axis(dense, stream.indices.astype(np.int64), stream.values, axis=-1)
    return inverse(basis, dense).reshape(-1)[: stream.original_length]


def encode_stream(stream: CompressedStream) -> bytes:
    expected = math.ceil(stream.original_length / stream.frame_size)
    if stream.indices.shape != (expected, stream.keep_k) or stream.values.shape != stream.indices.shape:
        raise MalformedStream("frame table does not match the header")
    header = HEADER.pack(
        MAGIC,
        VERSION,
        stream.kind.wire_id,
        stream.frame_size,
        stream.keep_k,
        stream.sample_rate,
        stream.original_length,
        stream.w_second,
    )
    records = np.empty(stream.indices.shape, dtype=RECORD)
    records["index"] = stream.indices
    records["value"] = stream.values
    return header + records.tobytes()


def decode_stream(data: bytes) -> CompressedStream:
    data = bytes(data)
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic(f"bad magic {data[:4]!r}")
    if len(data) < HEADER.size:
        raise TruncatedStream("header is incomplete")
    _, version, kind_id, frame_size, keep_k, rate, length, w_second = HEADER.unpack_from(data)
    if version != VERSION:
        raise UnsupportedVersion(f"container version {version} (expected {VERSION})")
    try:
        kind = TransformKind.from_wire_id(kind_id, w_second)
    except ValueError as exc:
        raise MalformedStream(str(exc)) from exc
    if frame_size == 0 or keep_k == 0 or keep_k > frame_size:
        raise MalformedStream(f"invalid frame_size={frame_size} / keep_k={keep_k}")
    n_frames = math.ceil(length / frame_size)
    body = memoryview(data)[HEADER.size :]
    need = n_frames * keep_k * RECORD.itemsize
    if len(body) < need:
        raise TruncatedStream(f"declared {n_frames} frames need {need} bytes, {len(body)} remain")
    if len(body) > need:
        raise MalformedStream(f"{len(body) - need} trailing bytes after the last frame")
    records = np.frombuffer(body, dtype=RECORD).reshape(n_frames, keep_k)
    indices = records["index"].copy()
    if np.any(indices >= frame_size) or np.any(np.diff(indices.astype(np.int64), axis=-1) <= 0):
        raise CorruptFrame("frame indices out of range or not strictly increasing")
    return CompressedStream(
        kind=kind,
        frame_size=frame_size,
        keep_k=keep_k,
        sample_rate=rate,
        original_length=length,
        indices=indices,
        values=records["value"].astype(np.float64),
    )
