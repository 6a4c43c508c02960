"""Dense complex matrix helpers and Hermitian eigensolvers.

Matrices are plain numpy complex128 arrays throughout the package.  The
production eigensolver wraps LAPACK; a self-contained cyclic Jacobi solver is
kept alongside it as an independent cross-check backend, selectable wherever an
eigensolver hook is accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_ATOL = 1e-10


class LinalgError(ValueError):
    """Dimension mismatch or non-Hermitian input."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` is real and sorted non-decreasing; column ``i`` of
    ``eigenvectors`` is a unit-norm eigenvector for ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_complex_matrix(a) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2:
        raise LinalgError(f"expected a 2-d matrix, got shape {arr.shape}")
    return arr


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise LinalgError(f"inner dimensions disagree: {a.shape} x {b.shape}")
    return a @ b


def _checked_hermitian(a) -> np.ndarray:
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise LinalgError(f"matrix is not square: {a.shape}")
    if a.size:
        dev = float(np.max(np.abs(a - a.conj().T)))
        if dev > HERMITICITY_ATOL:
            raise LinalgError(f"matrix is not Hermitian: max |a - a^H| = {dev:.3e}")
    # symmetrize so downstream results are insensitive to rounding-level asymmetry
    return 0.5 * (a + a.conj().T)


def hermitian_eigen(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix (LAPACK backend)."""
    h = _checked_hermitian(a)
    vals, vecs = np.linalg.eigh(h)
    return EigenDecomposition(eigenvalues=vals, eigenvectors=vecs)


def jacobi_eigen(a, sweep_order: str = "rows", off_tol: float = 1e-12,
                 max_sweeps: int = 100) -> EigenDecomposition:
    """Cyclic complex Jacobi eigendecomposition.

    Independent of the LAPACK path; intended for cross-checks on small
    matrices.  ``sweep_order`` selects the pivot ordering ("rows" walks the
    upper triangle row by row, "cols" column by column), which changes the
    basis returned inside degenerate eigenspaces but not the spectrum.
    Convergence: max off-diagonal magnitude below ``off_tol`` times the
    Frobenius norm, or ``LinalgError`` after ``max_sweeps`` sweeps.
    """
    h = _checked_hermitian(a)
    n = h.shape[0]
    if sweep_order == "rows":
        pivots = [(p, q) for p in range(n) for q in range(p + 1, n)]
    elif sweep_order == "cols":
        pivots = [(p, q) for q in range(n) for p in range(q)]
    else:
        raise ValueError(f"unknown sweep_order {sweep_order!r}")

    av = h.copy()
    vv = np.eye(n, dtype=complex)
    fro = float(np.linalg.norm(h))
    if n <= 1 or fro == 0.0:
        vals = av.diagonal().real.copy()
        return EigenDecomposition(eigenvalues=vals, eigenvectors=vv)

    def _converged() -> bool:
        off = float(np.max(np.abs(av - np.diag(av.diagonal()))))
        return off < off_tol * fro

    for _ in range(max_sweeps):
        if _converged():
            break
        for p, q in pivots:
            b = av[p, q]
            if abs(b) == 0.0:
                continue
            beta = math.atan2(b.imag, b.real)
            tau = (av[q, q].real - av[p, p].real) / (2.0 * abs(b))
            t = -math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            ph = complex(math.cos(beta), math.sin(beta))
            # plane rotation U: U[p,p]=c, U[p,q]=-s*ph, U[q,p]=s*conj(ph), U[q,q]=c
            colp = av[:, p].copy()
            colq = av[:, q].copy()
            av[:, p] = c * colp + s * ph.conjugate() * colq
            av[:, q] = -s * ph * colp + c * colq
            rowp = av[p, :].copy()
            rowq = av[q, :].copy()
            av[p, :] = c * rowp + s * ph * rowq
            av[q, :] = -s * ph.conjugate() * rowp + c * rowq
            vp = vv[:, p].copy()
            vq = vv[:, q].copy()
            vv[:, p] = c * vp + s * ph.conjugate() * vq
            vv[:, q] = -s * ph * vp + c * vq
    else:
        if not _converged():
            raise LinalgError(f"jacobi_eigen did not converge in {max_sweeps} sweeps")

    vals = av.diagonal().real.copy()
    order = np.argsort(vals, kind="stable")
    return EigenDecomposition(eigenvalues=vals[order], eigenvectors=vv[:, order])
