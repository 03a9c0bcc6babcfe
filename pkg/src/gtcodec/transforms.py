"""Orthonormal analysis bases and the forward/inverse projections.

Every basis is stored as an ``n x n`` matrix whose *columns* are the basis
vectors, so ``forward`` computes ``B.T @ s`` and ``inverse`` computes ``B @ c``.
Batched frames are rows of a 2-D array.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InvalidSize, InvalidWeight, NonPowerOfTwo
from .graph import build_adjacency_gt1, build_adjacency_gt2, laplacian_of
from .spectral import eigendecompose

ORTHONORMAL_TOL = 1e-10
GT2_MIN_GAP = 1e-6

KIND_NAMES = ("GT1", "GT2", "DCT1", "DCT2", "DCT3", "DCT4", "FWHT")


@dataclass(frozen=True)
class TransformKind:
    """One of the seven transform families; ``GT1`` also carries ``w_second``.

    ``w_second`` is rounded to float32 on construction, because that is the
    precision the container stores. Encoder and decoder therefore always
    rebuild the same basis.
    """

    name: str
    w_second: Optional[float] = None

    def __post_init__(self):
        name = self.name.upper()
        if name not in KIND_NAMES:
            raise ValueError(f"unknown transform {self.name!r}; expected one of {KIND_NAMES}")
        object.__setattr__(self, "name", name)
        if name == "GT1":
            w = 0.1 if self.w_second is None else float(self.w_second)
            if not (0.0 < w <= 1.0):
                raise InvalidWeight(f"w_second must lie in (0, 1], got {w}")
            object.__setattr__(self, "w_second", float(np.float32(w)))
        else:
            object.__setattr__(self, "w_second", None)

    @classmethod
    def parse(cls, name: str, w_second: Optional[float] = None) -> "TransformKind":
        return cls(name, w_second)

    @classmethod
    def from_wire_id(cls, wire_id: int, w_second: float = 0.0) -> "TransformKind":
        if not 0 <= wire_id < len(KIND_NAMES):
            raise ValueError(f"unknown transform id {wire_id}")
        name = KIND_NAMES[wire_id]
        return cls(name, w_second if name == "GT1" else None)

    @property
    def wire_id(self) -> int:
        return KIND_NAMES.index(self.name)

    @property
    def is_graph(self) -> bool:
        return self.name in ("GT1", "GT2")

    def __str__(self):
        return self.name


GT1 = TransformKind("GT1", 0.1)
GT2 = TransformKind("GT2")
DCT1 = TransformKind("DCT1")
DCT2 = TransformKind("DCT2")
DCT3 = TransformKind("DCT3")
DCT4 = TransformKind("DCT4")
FWHT = TransformKind("FWHT")
ALL_KINDS = (GT1, GT2, DCT1, DCT2, DCT3, DCT4, FWHT)


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    kind: TransformKind
    matrix: np.ndarray
    eigenvalues: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        B = np.array(self.matrix, dtype=np.float64)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise InvalidSize(f"basis must be square, got shape {B.shape}")
        resid = np.max(np.abs(B.T @ B - np.eye(B.shape[0])))
        if resid > ORTHONORMAL_TOL:
            raise ValueError(f"basis is not orthonormal (residual {resid:.3e})")
        B.setflags(write=False)
        object.__setattr__(self, "matrix", B)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def dct1_matrix(n: int) -> np.ndarray:
    if n < 2:
        raise InvalidSize("DCT-I needs n >= 2")
    j = np.arange(n)
    s = np.where((j == 0) | (j == n - 1), 1 / np.sqrt(2), 1.0)
    return np.sqrt(2 / (n - 1)) * np.outer(s, s) * np.cos(np.pi * np.outer(j, j) / (n - 1))


def dct2_matrix(n: int) -> np.ndarray:
    """Column ``k`` is the k-th DCT-II basis vector sampled at ``m = 0..n-1``."""
    m = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    B = np.sqrt(2 / n) * np.cos(np.pi * (2 * m + 1) * k / (2 * n))
    B[:, 0] /= np.sqrt(2)
    return B


def dct3_matrix(n: int) -> np.ndarray:
    return dct2_matrix(n).T.copy()


def dct4_matrix(n: int) -> np.ndarray:
    j = np.arange(n)
    return np.sqrt(2 / n) * np.cos(np.pi * np.outer(2 * j + 1, 2 * j + 1) / (4 * n))


def hadamard_matrix(n: int) -> np.ndarray:
    if not _is_pow2(n):
        raise NonPowerOfTwo(f"FWHT needs a power-of-two size, got {n}")
    return scipy.linalg.hadamard(n).astype(np.float64) / np.sqrt(n)


def _graph_basis(kind: TransformKind, n: int) -> OrthonormalBasis:
    if kind.name == "GT1":
        W = build_adjacency_gt1(n, kind.w_second)
    else:
        W = build_adjacency_gt2(n)
    eig = eigendecompose(laplacian_of(W))
    if kind.name == "GT2" and n > 1:
        gap = np.diff(eig.values).min()
        if gap <= GT2_MIN_GAP:
            raise ArithmeticError(f"GT-II spectrum gap {gap:.3e} is not simple")
    return OrthonormalBasis(kind, eig.vectors, eigenvalues=eig.values)


def _build(kind: TransformKind, n: int) -> OrthonormalBasis:
    n = int(n)
    if kind.name == "GT1":
        if n < 3:
            raise InvalidSize(f"GT1 needs n >= 3, got {n}")
    elif n < 2:
        raise InvalidSize(f"{kind} needs n >= 2, got {n}")
    if kind.is_graph:
        return _graph_basis(kind, n)
    builders = {
        "DCT1": dct1_matrix,
        "DCT2": dct2_matrix,
        "DCT3": dct3_matrix,
        "DCT4": dct4_matrix,
        "FWHT": hadamard_matrix,
    }
    return OrthonormalBasis(kind, builders[kind.name](n))


class BasisCache:
    """Write-once cache of bases keyed by ``(kind, n)``.

    A miss is computed under the lock, so each basis is built once. Stored
    bases are immutable and can be read from any thread.
    """

    def __init__(self):
        self._bases: dict[tuple[TransformKind, int], OrthonormalBasis] = {}
        self._lock = threading.Lock()

    def get(self, kind: TransformKind, n: int) -> OrthonormalBasis:
        key = (kind, int(n))
        basis = self._bases.get(key)
        if basis is None:
            with self._lock:
                basis = self._bases.get(key)
                if basis is None:
                    basis = _build(kind, n)
                    self._bases[key] = basis
        return basis

    def __len__(self):
        return len(self._bases)

    def __contains__(self, key):
        return key in self._bases


_CACHE = BasisCache()


def basis_for(kind: TransformKind | str, n: int) -> OrthonormalBasis:
    if isinstance(kind, str):
        kind = TransformKind(kind)
    return _CACHE.get(kind, n)


def _check_frames(basis: OrthonormalBasis, x, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 0 or x.shape[-1] != basis.n:
        raise DimensionMismatch(f"{what} length {x.shape[-1:] or 0} != basis size {basis.n}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{what} contains non-finite values")
    return x


def forward(basis: OrthonormalBasis, frame) -> np.ndarray:
    """Project one frame (or a stack of frames, one per row) onto the basis."""
    s = _check_frames(basis, frame, "frame")
    return s @ basis.matrix


def inverse(basis: OrthonormalBasis, coeffs) -> np.ndarray:
    c = _check_frames(basis, coeffs, "coefficients")
    return c @ basis.matrix.T


def fwht_fast(frame) -> np.ndarray:
    """Orthonormal Walsh-Hadamard transform in natural order, O(n log n).

    Works on the last axis, so a stack of frames can be passed at once.
    """
    x = np.array(frame, dtype=np.float64)
    n = x.shape[-1]
    if not _is_pow2(n):
        raise NonPowerOfTwo(f"FWHT needs a power-of-two size, got {n}")
    lead = x.shape[:-1]
    h = 1
    while h < n:
        y = x.reshape(lead + (n // (2 * h), 2, h))
        a = y[..., 0, :]
        b = y[..., 1, :]
        x = np.stack((a + b, a - b), axis=-2).reshape(lead + (n,))
        h *= 2
    return x / np.sqrt(n)
