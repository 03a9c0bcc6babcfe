"""Symmetric eigendecomposition by cyclic Jacobi rotations.

Rotations are applied in round-robin (tournament) order: each round rotates
``n // 2`` disjoint index pairs and every pair meets once per sweep. The
kernel is compiled with numba; the convergence loop stays in Python.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np

from .errors import NoConvergence, NotSymmetric
from .graph import LaplacianMatrix

SYMMETRY_TOL = 1e-12
SIGN_TOL = 1e-9
DEGENERATE_GAP = 1e-9
CLAMP_TOL = 1e-10
MAX_SWEEPS = 100
# rotations whose pivot is below this fraction of ||K||_F are no-ops at float64
_SKIP_REL = 1e-20


class DegenerateSpectrumWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class EigenBasis:
    """Eigenvectors as columns of ``vectors`` with ascending ``values``."""

    vectors: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ("vectors", "values"):
            a = np.array(getattr(self, name), dtype=np.float64)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


@lru_cache(maxsize=None)
def _tournament(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    m = n + (n % 2)  # odd n: one extra "bye" player
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if max(a, b) < n]
        P = np.array([a for a, _ in pairs], dtype=np.int64)
        Q = np.array([b for _, b in pairs], dtype=np.int64)
        rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


@numba.njit(cache=True)
def _rotate_round(A, Vt, P, Q, skip):
    m = P.shape[0]
    n = A.shape[0]
    c = np.ones(m)
    s = np.zeros(m)
    active = 0
    for i in range(m):
        p = P[i]
        q = Q[i]
        apq = A[p, q]
        if abs(apq) > skip:
            tau = (A[q, q] - A[p, p]) / (2.0 * apq)
            if tau >= 0.0:
                t = 1.0 / (tau + np.hypot(1.0, tau))
            else:
                t = -1.0 / (-tau + np.hypot(1.0, tau))
            c[i] = 1.0 / np.sqrt(1.0 + t * t)
            s[i] = t * c[i]
            active += 1
    if active == 0:
        return 0
    # A <- J^T A: rows p, q (contiguous); Vt gets the same row update
    for i in range(m):
        if s[i] == 0.0:
            continue
        p = P[i]
        q = Q[i]
        ci = c[i]
        si = s[i]
        for j in range(n):
            x = A[p, j]
            y = A[q, j]
            A[p, j] = ci * x - si * y
            A[q, j] = si * x + ci * y
            x = Vt[p, j]
            y = Vt[q, j]
            Vt[p, j] = ci * x - si * y
            Vt[q, j] = si * x + ci * y
    # A <- A J: walk row by row so every access stays in one cache line run
    for k in range(n):
        for i in range(m):
            if s[i] == 0.0:
                continue
            p = P[i]
            q = Q[i]
            x = A[k, p]
            y = A[k, q]
            A[k, p] = c[i] * x - s[i] * y
            A[k, q] = s[i] * x + c[i] * y
    for i in range(m):
        if s[i] != 0.0:
            A[P[i], Q[i]] = 0.0
            A[Q[i], P[i]] = 0.0
    return active


def _off_norm(A: np.ndarray) -> float:
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(K, tol=None, max_sweeps=MAX_SWEEPS, polish_sweeps=1):
    """Raw eigenpairs of a symmetric matrix, unsorted.

    Sweeps until the off-diagonal Frobenius norm drops to ``tol``
    (default ``1e-12 * n``), then runs ``polish_sweeps`` more. Returns
    ``(values, vectors)`` with eigenvectors in the columns.
    """
    A = np.array(K, dtype=np.float64, order="C")
    n = A.shape[0]
    Vt = np.eye(n)
    if n < 2:
        return np.diag(A).copy(), Vt
    if tol is None:
        tol = 1e-12 * n
    skip = _SKIP_REL * float(np.linalg.norm(A))
    rounds = _tournament(n)
    extra = 0
    for _ in range(max_sweeps):
        if _off_norm(A) <= tol:
            if extra >= polish_sweeps:
                return np.diag(A).copy(), Vt.T.copy()
            extra += 1
        for P, Q in rounds:
            _rotate_round(A, Vt, P, Q, skip)
    if _off_norm(A) <= tol:
        return np.diag(A).copy(), Vt.T.copy()
    raise NoConvergence(
        f"Jacobi did not converge in {max_sweeps} sweeps "
        f"(off-diagonal norm {_off_norm(A):.3e} > {tol:.3e})"
    )


def normalize_basis(vectors, values) -> EigenBasis:
    """Sort eigenpairs ascending and fix each column's sign.

    Eigenvalues closer than ``1e-9`` count as equal and keep their incoming
    relative order. A column is negated when its first entry larger than
    ``1e-9`` in magnitude is negative.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    start = 0
    for i in range(1, len(order) + 1):
        if i == len(order) or values[order[i]] - values[order[i - 1]] > DEGENERATE_GAP:
            order[start:i] = np.sort(order[start:i])
            start = i
    values = values[order]
    vectors = vectors[:, order].copy()
    for j in range(vectors.shape[1]):
        big = np.flatnonzero(np.abs(vectors[:, j]) > SIGN_TOL)
        if big.size and vectors[big[0], j] < 0:
            vectors[:, j] = -vectors[:, j]
    return EigenBasis(vectors=vectors, values=values)


def eigendecompose(K) -> EigenBasis:
    """Deterministic orthonormal eigenbasis of a symmetric (Laplacian) matrix."""
    entries = K.entries if isinstance(K, LaplacianMatrix) else np.asarray(K, dtype=np.float64)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise NotSymmetric(f"matrix must be square, got shape {entries.shape}")
    asym = np.max(np.abs(entries - entries.T)) if entries.size else 0.0
    if asym > SYMMETRY_TOL:
        raise NotSymmetric(f"max |K - K^T| = {asym:.3e} exceeds {SYMMETRY_TOL}")
    values, vectors = jacobi_eigh(0.5 * (entries + entries.T))
    values = np.where((values < 0) & (values >= -CLAMP_TOL), 0.0, values)
    basis = normalize_basis(vectors, values)
    gaps = np.diff(basis.values)
    if gaps.size and gaps.min() <= DEGENERATE_GAP:
        warnings.warn(
            f"near-degenerate eigenvalues (min gap {gaps.min():.3e}); keeping solver order",
            DegenerateSpectrumWarning,
            stacklevel=2,
        )
    return basis
