import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtcodec.errors import InvalidSize, InvalidWeight
from gtcodec.graph import (
    AdjacencyMatrix,
    build_adjacency_gt1,
    build_adjacency_gt2,
    degree_of,
    laplacian_of,
)

# the 8x8 matrices printed for graph structures I and II
W1_PAPER = np.array([
    [0, 1, 0.1, 0, 0, 0, 0, 0],
    [1, 0, 1, 0.1, 0, 0, 0, 0],
    [0.1, 1, 0, 1, 0.1, 0, 0, 0],
    [0, 0.1, 1, 0, 1, 0.1, 0, 0],
    [0, 0, 0.1, 1, 0, 1, 0.1, 0],
    [0, 0, 0, 0.1, 1, 0, 1, 0.1],
    [0, 0, 0, 0, 0.1, 1, 0, 1],
    [0, 0, 0, 0, 0, 0.1, 1, 0],
])
W2_PAPER = np.array([
    [0, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 0],
], dtype=float)


def test_gt1_matches_printed_w1():
    assert np.array_equal(build_adjacency_gt1(8, 0.1).weights, W1_PAPER)


def test_gt1_music_weight():
    expected = np.where(W1_PAPER == 0.1, 0.3, W1_PAPER)
    assert np.array_equal(build_adjacency_gt1(8, 0.3).weights, expected)


def test_gt1_minimal():
    W = build_adjacency_gt1(3, 0.1).weights
    assert np.array_equal(W, [[0, 1, 0.1], [1, 0, 1], [0.1, 1, 0]])


def test_gt2_matches_printed_w2():
    assert np.array_equal(build_adjacency_gt2(8).weights, W2_PAPER)


@pytest.mark.parametrize("n, expected", [
    (2, [[0, 1], [1, 0]]),
    (3, [[0, 1, 0], [1, 0, 1], [0, 1, 0]]),
])
def test_gt2_small(n, expected):
    assert np.array_equal(build_adjacency_gt2(n).weights, expected)


@pytest.mark.parametrize("n, w", [(2, 0.1), (0, 0.1)])
def test_gt1_invalid_size(n, w):
    with pytest.raises(InvalidSize):
        build_adjacency_gt1(n, w)


@pytest.mark.parametrize("w", [0.0, -0.1, 1.5])
def test_gt1_invalid_weight(w):
    with pytest.raises(InvalidWeight):
        build_adjacency_gt1(8, w)


def test_gt2_invalid_size():
    with pytest.raises(InvalidSize):
        build_adjacency_gt2(1)


def test_adjacency_rejects_asymmetric():
    with pytest.raises(InvalidWeight):
        AdjacencyMatrix(np.array([[0, 1.0], [0.5, 0]]))


def test_adjacency_is_immutable():
    W = build_adjacency_gt2(4)
    with pytest.raises(ValueError):
        W.weights[0, 1] = 3.0


def test_degree_gt2():
    assert np.array_equal(degree_of(build_adjacency_gt2(8)).diagonal, [1, 2, 2, 2, 2, 2, 2, 1])


def test_degree_gt1_left_to_right():
    # oracle: plain Python left-to-right row sums of the printed matrix
    expected = [sum(float(v) for v in row) for row in W1_PAPER]
    got = degree_of(build_adjacency_gt1(8, 0.1)).diagonal
    assert got.tolist() == expected
    assert np.allclose(got, [1.1, 2.1, 2.2, 2.2, 2.2, 2.2, 2.1, 1.1], rtol=0, atol=1e-15)


def test_degree_empty_graph():
    assert np.array_equal(degree_of(AdjacencyMatrix(np.zeros((4, 4)))).diagonal, np.zeros(4))


@pytest.mark.parametrize("W, expected", [
    (build_adjacency_gt2(2), [[1, -1], [-1, 1]]),
    (build_adjacency_gt2(3), [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]),
    (build_adjacency_gt1(3, 0.1), [[1.1, -1, -0.1], [-1, 2, -1], [-0.1, -1, 1.1]]),
])
def test_laplacian_small(W, expected):
    assert np.allclose(laplacian_of(W).entries, expected, rtol=0, atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 200), w=st.floats(1e-6, 1.0))
def test_laplacian_row_sums_and_symmetry(n, w):
    K = laplacian_of(build_adjacency_gt1(n, w)).entries
    assert np.all(np.abs(K.sum(axis=1)) <= 1e-12 * n)
    assert np.array_equal(K, K.T)
    W = build_adjacency_gt1(n, w).weights
    assert np.array_equal(W, W.T) and np.all(np.diag(W) == 0) and np.all(W >= 0)


@pytest.mark.parametrize("n", [2, 3, 8, 33])
def test_connected_structures_have_single_zero_eigenvalue(n):
    for W in [build_adjacency_gt2(n)] + ([build_adjacency_gt1(n, 0.1)] if n >= 3 else []):
        lam = np.linalg.eigvalsh(laplacian_of(W).entries)
        assert lam[0] < 1e-9 and lam[1] > 1e-9
        assert lam.min() >= -1e-10
