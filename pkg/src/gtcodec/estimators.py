"""scikit-learn compatible wrappers.

Both estimators take a 2-D array whose rows are frames (``n_frames x
frame_size``), so they slot into pipelines after any framing step, e.g.
``frame_signal(x, 512)[0]``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .codec import top_k_indices
from .transforms import TransformKind, basis_for


class BlockTransform(TransformerMixin, BaseEstimator):
    """Orthonormal block transform of fixed-length frames.

    Parameters
    ----------
    kind : str, default="gt1"
        One of ``gt1, gt2, dct1, dct2, dct3, dct4, fwht``.
    w_second : float, default=0.1
        Second-neighbour edge weight, used only by ``gt1``.

    Attributes
    ----------
    basis_ : ndarray of shape (n_features, n_features)
        Basis vectors in the columns.
    eigenvalues_ : ndarray or None
        Graph Laplacian spectrum for ``gt1``/``gt2``.
    """

    def __init__(self, kind="gt1", w_second=0.1):
        self.kind = kind
        self.w_second = w_second

    def _kind(self) -> TransformKind:
        return TransformKind(self.kind, self.w_second if str(self.kind).upper() == "GT1" else None)

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_min_features=2)
        basis = basis_for(self._kind(), X.shape[1])
        self.basis_ = basis.matrix
        self.eigenvalues_ = basis.eigenvalues
        self.n_features_in_ = X.shape[1]
        return self

    def _check(self, X):
        check_is_fitted(self, "basis_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but {type(self).__name__} "
                f"is expecting {self.n_features_in_} features as input"
            )
        return X

    def transform(self, X):
        return self._check(X) @ self.basis_

    def inverse_transform(self, X):
        return self._check(X) @ self.basis_.T


class SparseTransformCoder(BlockTransform):
    """Block transform followed by per-frame top-k coefficient retention.

    ``k = n_features // cr`` largest-magnitude coefficients are kept per row;
    the rest are zeroed. ``inverse_transform`` reconstructs the frames.
    """

    def __init__(self, kind="gt1", w_second=0.1, cr=4):
        super().__init__(kind=kind, w_second=w_second)
        self.cr = cr

    def fit(self, X, y=None):
        super().fit(X)
        if self.cr < 1 or self.n_features_in_ % self.cr:
            raise ValueError(f"cr={self.cr} must divide the frame size {self.n_features_in_}")
        self.k_ = self.n_features_in_ // self.cr
        return self

    def transform(self, X):
        C = super().transform(X)
        idx = top_k_indices(C, self.k_)
        out = np.zeros_like(C)
        np.put_along_axis(out, idx, np.take_along_axis(C, idx, axis=1), axis=1)
        return out

    def score(self, X, y=None):
        """Pooled energy-retained percentage over all rows of ``X``."""
        full = BlockTransform.transform(self, X)
        kept = self.transform(X)
        total = np.sum(full * full)
        return 100.0 * float(np.sum(kept * kept) / total) if total else 100.0
