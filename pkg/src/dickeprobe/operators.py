"""Collective-spin operators and encoding Hamiltonians.

Two matrix bases are supported:

* ``"sym"``: the (N+1)-dimensional symmetric (maximum total spin J = N/2)
  sector, indexed by excitation number ``l`` so that row ``l`` carries the
  J_z eigenvalue M = N/2 - l.
* ``"full"``: the 2^N computational basis.  Qubit 0 is the most significant
  bit of the index; bit value 1 means that qubit is excited (spin down).

Hamiltonian families are built from the collective spin component J_n along a
unit axis n: the linear encoding J_n, four two-body forms combining J_n and
J_n^2, and integer matrix powers (J_n)^k.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .caps import check_full_capacity
from .linalg import EigenDecomposition, LinalgError, hermitian_eigen

TWO_BODY_RS = (1, 2, 3, 4)
DEGENERACY_RTOL = 1e-9

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class OperatorError(ValueError):
    """Invalid operator request (bad axis, unknown variant, basis mismatch)."""


@dataclass(frozen=True)
class Direction:
    """Unit axis on the sphere given by polar and azimuthal angles (radians)."""

    polar: float
    azimuth: float

    def __post_init__(self):
        if not (math.isfinite(self.polar) and math.isfinite(self.azimuth)):
            raise OperatorError("direction angles must be finite")

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.polar)
        return np.array([st * math.cos(self.azimuth),
                         st * math.sin(self.azimuth),
                         math.cos(self.polar)])

    @classmethod
    def from_vector(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm < 1e-14:
            raise OperatorError("cannot build a direction from a near-zero vector")
        x, y, z = v / norm
        polar = math.acos(min(1.0, max(-1.0, z)))
        azimuth = math.atan2(y, x) % (2.0 * math.pi)
        return cls(polar=polar, azimuth=azimuth)


Z_AXIS = Direction(0.0, 0.0)


@dataclass(frozen=True)
class HamiltonianSpec:
    """Declarative description of an encoding Hamiltonian.

    ``kind`` is one of ``"linear"``, ``"two_body"`` (with ``r`` in 1..4) or
    ``"power"`` (with exponent ``k``).  ``mu`` and ``eta`` are the linear and
    quadratic couplings; the published forms correspond to mu = eta = 1.
    """

    kind: str
    n_qubits: int
    r: int | None = None
    k: int | None = None
    mu: float = 1.0
    eta: float = 1.0
    axis: Direction = Z_AXIS
    basis: str = "sym"

    def __post_init__(self):
        if self.n_qubits < 1:
            raise OperatorError(f"need at least one qubit, got {self.n_qubits}")
        if self.basis not in ("sym", "full"):
            raise OperatorError(f"unknown basis {self.basis!r}")
        if self.kind == "linear":
            pass
        elif self.kind == "two_body":
            if self.r not in TWO_BODY_RS:
                raise OperatorError(f"two-body form index must be in 1..4, got {self.r}")
        elif self.kind == "power":
            if self.k is None or self.k < 1:
                raise OperatorError(f"power exponent must be a positive integer, got {self.k}")
        else:
            raise OperatorError(f"unknown hamiltonian kind {self.kind!r}")
        if not (math.isfinite(self.mu) and math.isfinite(self.eta)):
            raise OperatorError("couplings must be finite")

    @classmethod
    def linear(cls, n_qubits, mu=1.0, axis=Z_AXIS, basis="sym"):
        return cls(kind="linear", n_qubits=n_qubits, mu=mu, axis=axis, basis=basis)

    @classmethod
    def two_body(cls, r, n_qubits, mu=1.0, eta=1.0, axis=Z_AXIS, basis="sym"):
        return cls(kind="two_body", n_qubits=n_qubits, r=r, mu=mu, eta=eta,
                   axis=axis, basis=basis)

    @classmethod
    def power(cls, k, n_qubits, axis=Z_AXIS, basis="sym"):
        return cls(kind="power", n_qubits=n_qubits, k=k, axis=axis, basis=basis)

    def with_axis(self, axis: Direction) -> "HamiltonianSpec":
        return replace(self, axis=axis)

    def with_basis(self, basis: str) -> "HamiltonianSpec":
        return replace(self, basis=basis)

    def default_couplings(self) -> bool:
        return self.mu == 1.0 and self.eta == 1.0

    def label(self) -> str:
        if self.kind == "linear":
            return "linear"
        if self.kind == "two_body":
            return f"r{self.r}"
        return f"power{self.k}"


class HermitianOperator:
    """A Hermitian matrix tagged with its basis, with a cached eigensystem.

    The eigendecomposition is computed at most once; concurrent readers block
    on a lock until the first computation finishes.
    """

    def __init__(self, matrix, basis: str, n_qubits: int):
        matrix = np.asarray(matrix, dtype=complex)
        if basis not in ("sym", "full"):
            raise OperatorError(f"unknown basis {basis!r}")
        expected = n_qubits + 1 if basis == "sym" else 2 ** n_qubits
        if matrix.shape != (expected, expected):
            raise OperatorError(
                f"matrix shape {matrix.shape} does not match basis {basis!r} "
                f"for N={n_qubits} (expected {expected}x{expected})")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-10:
            raise LinalgError("operator matrix is not Hermitian")
        self.matrix = matrix
        self.basis = basis
        self.n_qubits = n_qubits
        self._eigen: EigenDecomposition | None = None
        self._eigen_lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigen(self) -> EigenDecomposition:
        if self._eigen is None:
            with self._eigen_lock:
                if self._eigen is None:
                    self._eigen = hermitian_eigen(self.matrix)
        return self._eigen

    def expectation(self, vec: np.ndarray) -> float:
        return float(np.real(np.vdot(vec, self.matrix @ vec)))


def _sym_jz(n: int) -> np.ndarray:
    return np.diag(n / 2.0 - np.arange(n + 1)).astype(complex)


def _sym_jplus(n: int) -> np.ndarray:
    j = n / 2.0
    jp = np.zeros((n + 1, n + 1), dtype=complex)
    for l in range(1, n + 1):
        m = j - l
        jp[l - 1, l] = math.sqrt(j * (j + 1) - m * (m + 1))
    return jp


def _full_component(n: int, component: str) -> np.ndarray:
    sigma = _PAULI[component]
    total = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i in range(n):
        op = np.eye(2 ** i, dtype=complex)
        op = np.kron(op, sigma)
        op = np.kron(op, np.eye(2 ** (n - 1 - i), dtype=complex))
        total += 0.5 * op
    return total


def collective_spin(n_qubits: int, component: str, basis: str = "sym",
                    cap: int | None = None) -> HermitianOperator:
    """Collective spin component J_x, J_y or J_z."""
    if component not in ("x", "y", "z"):
        raise OperatorError(f"component must be 'x', 'y' or 'z', got {component!r}")
    if n_qubits < 1:
        raise OperatorError(f"need at least one qubit, got {n_qubits}")
    if basis == "sym":
        if component == "z":
            mat = _sym_jz(n_qubits)
        else:
            jp = _sym_jplus(n_qubits)
            jm = jp.conj().T
            mat = 0.5 * (jp + jm) if component == "x" else -0.5j * (jp - jm)
    elif basis == "full":
        check_full_capacity(n_qubits, cap)
        mat = _full_component(n_qubits, component)
    else:
        raise OperatorError(f"unknown basis {basis!r}")
    return HermitianOperator(mat, basis=basis, n_qubits=n_qubits)


@lru_cache(maxsize=None)
def sym_jy_eigen(n_qubits: int) -> EigenDecomposition:
    """Cached eigensystem of the symmetric-basis J_y (used for rotations)."""
    return hermitian_eigen(collective_spin(n_qubits, "y", "sym").matrix)


def j_along(n_qubits: int, axis: Direction, basis: str = "sym",
            cap: int | None = None) -> HermitianOperator:
    """Collective spin J_n along a unit axis n."""
    nx, ny, nz = axis.unit_vector
    mat = (nx * collective_spin(n_qubits, "x", basis, cap).matrix
           + ny * collective_spin(n_qubits, "y", basis, cap).matrix
           + nz * collective_spin(n_qubits, "z", basis, cap).matrix)
    return HermitianOperator(mat, basis=basis, n_qubits=n_qubits)


def diagonal_form(spec: HamiltonianSpec, m: np.ndarray) -> np.ndarray:
    """Hamiltonian eigenvalues as a function of the J_n eigenvalue array ``m``.

    Every supported family is a polynomial in J_n, so its action in the J_n
    eigenbasis is diagonal with these values.
    """
    m = np.asarray(m, dtype=float)
    if spec.kind == "linear":
        return spec.mu * m
    if spec.kind == "power":
        return m ** spec.k
    n4 = spec.n_qubits / 4.0
    if spec.r == 1:
        return spec.eta * m ** 2
    if spec.r == 2:
        return spec.mu * m + spec.eta * m ** 2
    if spec.r == 3:
        return 0.5 * spec.eta * (m ** 2 - n4)
    return spec.mu * m + 0.5 * spec.eta * (m ** 2 - n4)


def build_hamiltonian(spec: HamiltonianSpec, cap: int | None = None) -> HermitianOperator:
    """Materialize a HamiltonianSpec as a matrix in its declared basis."""
    jn = j_along(spec.n_qubits, spec.axis, spec.basis, cap).matrix
    dim = jn.shape[0]
    eye = np.eye(dim, dtype=complex)
    if spec.kind == "linear":
        mat = spec.mu * jn
    elif spec.kind == "power":
        mat = np.linalg.matrix_power(jn, spec.k)
    else:
        jn2 = jn @ jn
        if spec.r == 1:
            mat = spec.eta * jn2
        elif spec.r == 2:
            mat = spec.mu * jn + spec.eta * jn2
        elif spec.r == 3:
            mat = 0.5 * spec.eta * (jn2 - (spec.n_qubits / 4.0) * eye)
        else:
            mat = spec.mu * jn + 0.5 * spec.eta * (jn2 - (spec.n_qubits / 4.0) * eye)
    return HermitianOperator(mat, basis=spec.basis, n_qubits=spec.n_qubits)


def _label_dicke(n: int, l: int) -> str:
    if l == 0:
        return "|0...0>"
    if l == n:
        return "|1...1>"
    return f"D[l={l}]"


def _label_pair(n: int, la: int, lb: int) -> str:
    if {la, lb} == {0, n}:
        return "GHZ"
    return f"(D[l={la}]+D[l={lb}])/sqrt2"


@dataclass(frozen=True)
class ExtremalSummary:
    """Closed-form spectral extremes of a default-coupling two-body form."""

    r: int
    n_qubits: int
    lambda_max: float
    lambda_min: float
    label_max: str
    label_min: str
    fq_optimal: float


def closed_form_extrema(r: int, n_qubits: int) -> ExtremalSummary:
    """Extremal eigenvalues of the two-body forms with mu = eta = 1.

    The eigenstate labels name the Dicke levels attaining them; degenerate
    extremes are labelled by the equal-weight combination used for the
    optimal probe.
    """
    if r not in TWO_BODY_RS:
        raise OperatorError(f"two-body form index must be in 1..4, got {r}")
    n = n_qubits
    if n < 1:
        raise OperatorError(f"need at least one qubit, got {n}")
    odd = n % 2 == 1
    if r == 1:
        lmax = n * n / 4.0
        label_max = "GHZ"
        if odd:
            lmin, label_min = 0.25, _label_pair(n, (n - 1) // 2, (n + 1) // 2)
            fq = (n * n - 1.0) ** 2 / 16.0
        else:
            lmin, label_min = 0.0, _label_dicke(n, n // 2)
            fq = n ** 4 / 16.0
    elif r == 2:
        lmax = n * (n + 2) / 4.0
        label_max = _label_dicke(n, 0)
        if odd:
            lmin, label_min = -0.25, _label_dicke(n, (n + 1) // 2)
            fq = (n + 1.0) ** 4 / 16.0
        else:
            lmin, label_min = 0.0, _label_pair(n, n // 2, (n + 2) // 2)
            fq = n ** 2 * (n + 2.0) ** 2 / 16.0
    elif r == 3:
        lmax = n * (n - 1) / 8.0
        label_max = "GHZ"
        if odd:
            lmin = -(n - 1.0) / 8.0
            label_min = _label_pair(n, (n - 1) // 2, (n + 1) // 2)
            fq = (n * n - 1.0) ** 2 / 64.0
        else:
            lmin, label_min = -n / 8.0, _label_dicke(n, n // 2)
            fq = n ** 4 / 64.0
    else:
        lmax = n * (n + 3) / 8.0
        label_max = _label_dicke(n, 0)
        if odd:
            lmin = -(n + 3.0) / 8.0
            label_min = _label_pair(n, (n + 1) // 2, (n + 3) // 2)
            fq = (n + 3.0) ** 2 * (n + 1.0) ** 2 / 64.0
        else:
            lmin, label_min = -(n + 4.0) / 8.0, _label_dicke(n, (n + 2) // 2)
            fq = (n + 2.0) ** 4 / 64.0
    return ExtremalSummary(r=r, n_qubits=n, lambda_max=lmax, lambda_min=lmin,
                           label_max=label_max, label_min=label_min, fq_optimal=fq)


@dataclass(frozen=True)
class ExtremalPair:
    """Numerically extremal eigenpairs of a Hermitian operator."""

    lambda_max: float
    vector_max: np.ndarray
    lambda_min: float
    vector_min: np.ndarray
    max_degenerate: bool
    min_degenerate: bool


def extremal_eigenpair(op: HermitianOperator,
                       rtol: float = DEGENERACY_RTOL) -> ExtremalPair:
    """Largest and smallest eigenpairs, with degeneracy flags.

    Within a degenerate cluster (eigenvalues equal to relative tolerance
    ``rtol``) the lowest-index eigenvector is returned, which makes the choice
    deterministic but basis-dependent; the flag records that the cluster had
    more than one member.
    """
    ed = op.eigen
    vals = ed.eigenvalues
    vecs = ed.eigenvectors
    lmin = float(vals[0])
    lmax = float(vals[-1])
    tol_min = rtol * (1.0 + abs(lmin))
    tol_max = rtol * (1.0 + abs(lmax))
    min_cluster = np.flatnonzero(np.abs(vals - lmin) <= tol_min)
    max_cluster = np.flatnonzero(np.abs(vals - lmax) <= tol_max)
    return ExtremalPair(
        lambda_max=lmax,
        vector_max=vecs[:, int(max_cluster[0])].copy(),
        lambda_min=lmin,
        vector_min=vecs[:, int(min_cluster[0])].copy(),
        max_degenerate=len(max_cluster) > 1,
        min_degenerate=len(min_cluster) > 1,
    )
