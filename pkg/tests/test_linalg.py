"""Eigendecomposition helpers, checked against schoolbook oracles."""

import numpy as np
import pytest

from dickeprobe.linalg import (
    EigenDecomposition,
    LinalgError,
    as_complex_matrix,
    hermitian_eigen,
    jacobi_eigen,
    matmul,
)


def _random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def _schoolbook_matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0.0 + 0.0j
            for k in range(a.shape[1]):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def test_matmul_matches_schoolbook_product():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    np.testing.assert_allclose(matmul(a, b), _schoolbook_matmul(a, b),
                               atol=1e-12)


def test_matmul_rejects_mismatched_inner_dimension():
    with pytest.raises(LinalgError):
        matmul(np.eye(3), np.eye(4))


def test_as_complex_matrix_rejects_vectors():
    with pytest.raises(LinalgError):
        as_complex_matrix(np.arange(4.0))


def test_hermitian_eigen_sorted_and_reconstructs():
    rng = np.random.default_rng(5)
    h = _random_hermitian(rng, 7)
    ed = hermitian_eigen(h)
    assert np.all(np.diff(ed.eigenvalues) >= 0)
    np.testing.assert_allclose(ed.reconstruct(), h, atol=1e-10)
    gram = ed.eigenvectors.conj().T @ ed.eigenvectors
    np.testing.assert_allclose(gram, np.eye(7), atol=1e-10)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(LinalgError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(LinalgError):
        hermitian_eigen(np.zeros((2, 3)))


@pytest.mark.parametrize("dim", [2, 5, 8])
def test_jacobi_eigen_agrees_with_lapack(dim):
    rng = np.random.default_rng(17 + dim)
    h = _random_hermitian(rng, dim)
    jac = jacobi_eigen(h)
    lap = hermitian_eigen(h)
    np.testing.assert_allclose(jac.eigenvalues, lap.eigenvalues, atol=1e-10)
    np.testing.assert_allclose(jac.reconstruct(), h, atol=1e-10)
    gram = jac.eigenvectors.conj().T @ jac.eigenvectors
    np.testing.assert_allclose(gram, np.eye(dim), atol=1e-10)


def test_jacobi_eigen_diagonal_input_is_exact():
    ed = jacobi_eigen(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(ed.eigenvalues, [-1.0, 2.0, 3.0])


def test_eigendecomposition_reconstruct_roundtrip():
    vals = np.array([1.0, 4.0])
    vecs = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    ed = EigenDecomposition(eigenvalues=vals, eigenvectors=vecs)
    expected = vecs @ np.diag(vals) @ vecs.T
    np.testing.assert_allclose(ed.reconstruct(), expected, atol=1e-14)
