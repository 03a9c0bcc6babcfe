"""Line-graph structures over the samples of an audio frame.

Two structures are supported:

* GT-I: every sample is joined to its first neighbours with weight 1 and to
  its second neighbours with weight ``w_second`` (0.1 for speech, 0.3 for
  music).
* GT-II: the plain path graph, first neighbours only, weight 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSize, InvalidWeight

FIRST_NEIGHBOR_WEIGHT = 1.0


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    """Symmetric, non-negative edge weights with an empty diagonal."""

    weights: np.ndarray

    def __post_init__(self):
        w = _frozen(self.weights)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InvalidSize(f"adjacency must be square, got shape {w.shape}")
        if not np.array_equal(w, w.T):
            raise InvalidWeight("adjacency must be symmetric")
        if np.any(np.diag(w) != 0):
            raise InvalidWeight("adjacency must have a zero diagonal")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise InvalidWeight("edge weights must be finite and non-negative")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class DegreeMatrix:
    diagonal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diagonal", _frozen(self.diagonal))

    @property
    def n(self) -> int:
        return self.diagonal.shape[0]

    def toarray(self) -> np.ndarray:
        return np.diag(self.diagonal)


@dataclass(frozen=True, eq=False)
class LaplacianMatrix:
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _banded(n: int, offsets: dict[int, float]) -> np.ndarray:
    w = np.zeros((n, n))
    for off, val in offsets.items():
        idx = np.arange(n - off)
        w[idx, idx + off] = val
        w[idx + off, idx] = val
    return w


def build_adjacency_gt1(n: int, w_second: float = 0.1) -> AdjacencyMatrix:
    """GT-I adjacency: weight 1 on the first off-diagonals, ``w_second`` on the second."""
    if n < 3:
        raise InvalidSize(f"GT-I needs n >= 3, got {n}")
    w_second = float(w_second)
    if not (0.0 < w_second <= 1.0):
        raise InvalidWeight(f"w_second must lie in (0, 1], got {w_second}")
    return AdjacencyMatrix(_banded(n, {1: FIRST_NEIGHBOR_WEIGHT, 2: w_second}))


def build_adjacency_gt2(n: int) -> AdjacencyMatrix:
    if n < 2:
        raise InvalidSize(f"GT-II needs n >= 2, got {n}")
    return AdjacencyMatrix(_banded(n, {1: FIRST_NEIGHBOR_WEIGHT}))


def degree_of(W: AdjacencyMatrix) -> DegreeMatrix:
    # cumsum accumulates strictly left to right, unlike np.sum's pairwise scheme
    w = W.weights
    if w.shape[0] == 0:
        return DegreeMatrix(np.zeros(0))
    return DegreeMatrix(np.cumsum(w, axis=1)[:, -1])


def laplacian_of(W: AdjacencyMatrix) -> LaplacianMatrix:
    """Combinatorial Laplacian ``D - W``."""
    return LaplacianMatrix(degree_of(W).toarray() - W.weights)
