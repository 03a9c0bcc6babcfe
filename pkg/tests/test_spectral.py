import warnings

import numpy as np
import pytest

from gtcodec.errors import NoConvergence, NotSymmetric
from gtcodec.graph import build_adjacency_gt1, build_adjacency_gt2, laplacian_of
from gtcodec.spectral import (
    DegenerateSpectrumWarning,
    eigendecompose,
    jacobi_eigh,
    normalize_basis,
)

R2 = 1 / np.sqrt(2)


def path_laplacian(n):
    return laplacian_of(build_adjacency_gt2(n))


def check_invariants(basis, K):
    n = basis.n
    V, lam = basis.vectors, basis.values
    assert np.max(np.abs(V.T @ V - np.eye(n))) <= 1e-10
    assert np.all(np.diff(lam) >= 0)
    for j in range(n):
        big = np.flatnonzero(np.abs(V[:, j]) > 1e-9)
        assert V[big[0], j] > 0
    scale = max(np.max(np.abs(K)), 1.0)
    assert np.max(np.abs(basis.reconstruct() - K)) <= 1e-8 * scale


def test_two_by_two():
    b = eigendecompose(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    assert np.allclose(b.values, [0, 2], atol=1e-14)
    assert np.allclose(b.vectors[:, 0], [R2, R2], atol=1e-14)
    assert np.allclose(b.vectors[:, 1], [R2, -R2], atol=1e-14)


def test_zero_matrix_gives_identity():
    with pytest.warns(DegenerateSpectrumWarning):
        b = eigendecompose(np.zeros((4, 4)))
    assert np.array_equal(b.values, np.zeros(4))
    assert np.array_equal(b.vectors, np.eye(4))


def test_path_8_closed_form():
    b = eigendecompose(path_laplacian(8))
    k = np.arange(8)
    assert np.allclose(b.values, 2 - 2 * np.cos(np.pi * k / 8), rtol=0, atol=1e-12)
    assert np.allclose(
        b.values,
        [0, 0.15224, 0.58579, 1.23463, 2, 2.76537, 3.41421, 3.84776],
        rtol=0,
        atol=5e-6,
    )


@pytest.mark.parametrize("n", [3, 5, 16, 31, 64, 128])
@pytest.mark.parametrize("structure", ["gt1", "gt1_music", "gt2"])
def test_against_numpy_oracle(structure, n):
    if structure == "gt2":
        K = path_laplacian(n).entries
    else:
        K = laplacian_of(build_adjacency_gt1(n, 0.3 if structure == "gt1_music" else 0.1)).entries
    b = eigendecompose(K)
    check_invariants(b, K)
    lam, U = np.linalg.eigh(K)
    assert np.allclose(b.values, lam, rtol=0, atol=1e-10)
    # simple spectra: eigenvectors agree up to sign
    U = U * np.where(U[np.argmax(np.abs(U) > 1e-9, axis=0), range(n)] < 0, -1, 1)
    assert np.max(np.abs(b.vectors - U)) < 1e-8
    # constant vector for the zero eigenvalue of a connected graph
    assert np.allclose(b.vectors[:, 0], 1 / np.sqrt(n), atol=1e-8)


def test_random_symmetric(rng):
    A = rng.standard_normal((40, 40))
    A = A + A.T
    b = eigendecompose(A)
    check_invariants(b, A)
    assert np.allclose(b.values, np.linalg.eigvalsh(A), atol=1e-10)


def test_deterministic():
    K = laplacian_of(build_adjacency_gt1(64, 0.1))
    a, b = eigendecompose(K), eigendecompose(K)
    assert a.vectors.tobytes() == b.vectors.tobytes()
    assert a.values.tobytes() == b.values.tobytes()


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        eigendecompose(np.array([[1.0, 2.0], [2.0 + 1e-9, 1.0]]))


def test_no_convergence():
    A = np.arange(36.0).reshape(6, 6)
    with pytest.raises(NoConvergence):
        jacobi_eigh(A + A.T, max_sweeps=1)


def test_gt_spectra_are_simple():
    with warnings.catch_warnings():
        warnings.simplefilter("error", DegenerateSpectrumWarning)
        for n in (16, 64):
            eigendecompose(laplacian_of(build_adjacency_gt1(n, 0.1)))
            eigendecompose(path_laplacian(n))


def test_normalize_flips_sign():
    b = normalize_basis(np.array([[-R2], [-R2]]), np.array([1.0]))
    assert np.array_equal(b.vectors[:, 0], [R2, R2])


def test_normalize_identity_case():
    V = np.array([[R2, R2], [R2, -R2]])
    b = normalize_basis(V, np.array([0.0, 2.0]))
    assert np.array_equal(b.vectors, V)
    assert np.array_equal(b.values, [0.0, 2.0])


def test_normalize_sorts():
    V = np.array([[R2, R2], [-R2, R2]])
    b = normalize_basis(V, np.array([2.0, 0.0]))
    assert np.array_equal(b.values, [0.0, 2.0])
    assert np.array_equal(b.vectors, [[R2, R2], [R2, -R2]])


def test_normalize_keeps_order_of_near_ties():
    V = np.eye(3)
    b = normalize_basis(V, np.array([1.0 + 5e-10, 1.0, 0.0]))
    # the first two differ by < 1e-9: incoming order (0 then 1) is kept
    assert np.array_equal(b.vectors, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def test_negative_roundoff_clamped():
    b = eigendecompose(path_laplacian(16))
    assert b.values[0] >= 0.0
