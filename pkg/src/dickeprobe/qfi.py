"""Quantum and classical Fisher information for phase estimation.

The phase is imprinted by exp(-i H theta) with a Hermitian generator H.  For
pure probes the QFI is four times the generator variance; for mixed states it
is evaluated spectrally,

    F = 2 sum_{ij} (lam_i - lam_j)^2 / (lam_i + lam_j) |<i|H|j>|^2,

restricted to pairs with lam_i + lam_j above a fixed cutoff.  The symmetric
logarithmic derivative (SLD) and POVM-based classical Fisher information are
provided for cross-checks and measurement design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .linalg import EigenDecomposition, hermitian_eigen
from .operators import HermitianOperator
from .states import DensityMatrix, FullState, SymVector

EIGENVALUE_CUTOFF = 1e-12
VARIANCE_FLOOR = -1e-10


class QfiError(ValueError):
    """Dimension/basis mismatch or invalid measurement."""


@dataclass(frozen=True)
class QfiResult:
    """A QFI value with the derived phase sensitivity and diagnostics."""

    value: float
    sensitivity: float
    method: str
    rank_used: int | None = None
    cutoff: float | None = None


@dataclass(frozen=True)
class PovmElement:
    """One positive operator of a measurement, tagged with an outcome label."""

    label: str
    matrix: np.ndarray


def sensitivity(fq: float) -> float:
    """Cramer-Rao phase sensitivity 1/sqrt(F); infinite below the cutoff."""
    if fq < VARIANCE_FLOOR:
        raise QfiError(f"negative Fisher information {fq!r}")
    if fq <= EIGENVALUE_CUTOFF:
        return math.inf
    return 1.0 / math.sqrt(fq)


def _state_vector(state, op: HermitianOperator) -> np.ndarray:
    if isinstance(state, SymVector):
        basis = "sym"
    elif isinstance(state, FullState):
        basis = "full"
    else:
        raise QfiError(f"expected SymVector or FullState, got {type(state).__name__}")
    if basis != op.basis or state.n_qubits != op.n_qubits:
        raise QfiError(
            f"state ({basis}, N={state.n_qubits}) does not match operator "
            f"({op.basis}, N={op.n_qubits})")
    return state.amplitudes


def _clamped_variance(vec: np.ndarray, mat: np.ndarray) -> float:
    hv = mat @ vec
    mean = float(np.real(np.vdot(vec, hv)))
    second = float(np.real(np.vdot(hv, hv)))
    var = second - mean * mean
    if var < VARIANCE_FLOOR:
        raise QfiError(f"generator variance {var!r} is negative beyond rounding")
    return max(var, 0.0)


def qfi_pure(state, generator: HermitianOperator) -> QfiResult:
    """QFI of a pure probe: 4 (<H^2> - <H>^2)."""
    vec = _state_vector(state, generator)
    value = 4.0 * _clamped_variance(vec, generator.matrix)
    return QfiResult(value=value, sensitivity=sensitivity(value),
                     method="pure_variance")


def qfi_mixed(rho: DensityMatrix, generator: HermitianOperator,
              eigensolver: Callable[[np.ndarray], EigenDecomposition] | None = None,
              ) -> QfiResult:
    """Spectral QFI of a mixed probe.

    ``eigensolver`` may replace the default LAPACK path (e.g. with the Jacobi
    backend) for cross-checks; the result is invariant under relabeling of
    degenerate eigenvectors.
    """
    _check_rho_op(rho, generator)
    solve = eigensolver or hermitian_eigen
    ed = solve(rho.matrix)
    lam = ed.eigenvalues
    v = ed.eigenvectors
    h_eig = v.conj().T @ generator.matrix @ v
    s = lam[:, None] + lam[None, :]
    d = lam[:, None] - lam[None, :]
    mask = s > EIGENVALUE_CUTOFF
    value = 2.0 * float(np.sum((d[mask] ** 2 / s[mask]) * np.abs(h_eig[mask]) ** 2))
    value = max(value, 0.0)
    return QfiResult(value=value, sensitivity=sensitivity(value),
                     method="mixed_spectral",
                     rank_used=int(np.sum(lam > EIGENVALUE_CUTOFF)),
                     cutoff=EIGENVALUE_CUTOFF)


def _check_rho_op(rho: DensityMatrix, op: HermitianOperator) -> None:
    if op.basis != "full" or rho.n_qubits != op.n_qubits:
        raise QfiError(
            f"density matrix (N={rho.n_qubits}) needs a full-basis operator of the "
            f"same size, got ({op.basis}, N={op.n_qubits})")


def sld_operator(rho: DensityMatrix, generator: HermitianOperator,
                 eigensolver: Callable[[np.ndarray], EigenDecomposition] | None = None,
                 ) -> HermitianOperator:
    """Symmetric logarithmic derivative L solving dρ/dθ = (Lρ + ρL)/2.

    The derivative is dρ/dθ = -i [H, ρ]; in the eigenbasis of ρ,
    L_ij = 2 (dρ)_ij / (lam_i + lam_j), with terms below the eigenvalue cutoff
    set to zero.  Satisfies Tr(ρ L^2) = QFI.
    """
    _check_rho_op(rho, generator)
    solve = eigensolver or hermitian_eigen
    ed = solve(rho.matrix)
    lam = ed.eigenvalues
    v = ed.eigenvectors
    h_eig = v.conj().T @ generator.matrix @ v
    drho_eig = -1j * h_eig * (lam[None, :] - lam[:, None])
    s = lam[:, None] + lam[None, :]
    l_eig = np.where(s > EIGENVALUE_CUTOFF, 2.0 * drho_eig / np.where(s > EIGENVALUE_CUTOFF, s, 1.0), 0.0)
    mat = v @ l_eig @ v.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return HermitianOperator(mat, basis="full", n_qubits=rho.n_qubits)


def encode(rho: DensityMatrix, generator: HermitianOperator, theta: float) -> DensityMatrix:
    """Phase-encoded state exp(-i H theta) rho exp(+i H theta)."""
    _check_rho_op(rho, generator)
    ed = generator.eigen
    u = ed.eigenvectors * np.exp(-1j * theta * ed.eigenvalues)[None, :]
    u = u @ ed.eigenvectors.conj().T
    mat = u @ rho.matrix @ u.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(n_qubits=rho.n_qubits, matrix=mat)


def classical_fi(rho: DensityMatrix, generator: HermitianOperator,
                 povm: Sequence[PovmElement], theta: float = 0.0) -> float:
    """Classical Fisher information of a POVM at encoding phase ``theta``.

    F = sum_x (p_x')^2 / p_x with p_x = Tr(E_x rho_theta) and
    p_x' = Tr(E_x (-i)[H, rho_theta]); outcomes with p_x <= 1e-12 are skipped.
    Raises unless the POVM elements sum to the identity within 1e-10.
    """
    _check_rho_op(rho, generator)
    if not povm:
        raise QfiError("empty POVM")
    dim = rho.matrix.shape[0]
    total = np.zeros((dim, dim), dtype=complex)
    for el in povm:
        mat = np.asarray(el.matrix, dtype=complex)
        if mat.shape != (dim, dim):
            raise QfiError(f"POVM element {el.label!r} has shape {mat.shape}, "
                           f"expected {(dim, dim)}")
        total += mat
    if np.max(np.abs(total - np.eye(dim))) > 1e-10:
        raise QfiError("POVM elements do not sum to the identity within 1e-10")

    rho_t = encode(rho, generator, theta).matrix
    h = generator.matrix
    drho = -1j * (h @ rho_t - rho_t @ h)
    fi = 0.0
    for el in povm:
        e = np.asarray(el.matrix, dtype=complex)
        p = float(np.real(np.trace(e @ rho_t)))
        if p <= 1e-12:
            continue
        dp = float(np.real(np.trace(e @ drho)))
        fi += dp * dp / p
    return fi
