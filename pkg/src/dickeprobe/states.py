"""Probe states in the symmetric Dicke basis and the full 2^N space.

Symmetric-sector vectors are indexed by excitation number ``l`` (number of
qubits in |1>), so index ``l`` is the Dicke level with J_z eigenvalue
M = N/2 - l.  Full-space vectors use the computational basis with qubit 0 as
the most significant bit and bit value 1 meaning |1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .caps import DEFAULT_FULL_CAP, check_full_capacity
from .linalg import hermitian_eigen
from .operators import (Direction, HamiltonianSpec, build_hamiltonian,
                        extremal_eigenpair, sym_jy_eigen)

NORM_ATOL = 1e-12
PHASE_EPS = 1e-12


class StateError(ValueError):
    """Invalid state construction or basis mismatch."""


def binomial(n: int, k: int) -> float:
    """Binomial coefficient as a float: exact for n <= 20, log-gamma beyond."""
    if k < 0 or k > n:
        return 0.0
    if n <= 20:
        return float(math.comb(n, k))
    return math.exp(math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1))


def m_value(n_qubits: int, l: int) -> float:
    """J_z eigenvalue of the Dicke level with ``l`` excitations."""
    return n_qubits / 2.0 - l


@dataclass(frozen=True)
class SymVector:
    """Normalized pure state in the symmetric sector (length N+1)."""

    n_qubits: int
    amplitudes: np.ndarray
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.n_qubits + 1,):
            raise StateError(
                f"symmetric vector for N={self.n_qubits} needs {self.n_qubits + 1} "
                f"amplitudes, got shape {amps.shape}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_ATOL:
            raise StateError(f"state norm^2 = {norm!r} is not 1 within {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class FullState:
    """Normalized pure state over the 2^N computational basis."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** self.n_qubits,):
            raise StateError(
                f"full state for N={self.n_qubits} needs {2 ** self.n_qubits} "
                f"amplitudes, got shape {amps.shape}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_ATOL:
            raise StateError(f"state norm^2 = {norm!r} is not 1 within {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class DensityMatrix:
    """Density operator over the 2^N computational basis.

    Construction checks hermiticity and unit trace; ``validate`` additionally
    checks positivity (eigenvalues >= -1e-10).
    """

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = 2 ** self.n_qubits
        if mat.shape != (d, d):
            raise StateError(f"density matrix for N={self.n_qubits} must be {d}x{d}, "
                             f"got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
            raise StateError("density matrix is not Hermitian within 1e-10")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > 1e-10:
            raise StateError(f"density matrix trace {tr!r} is not 1 within 1e-10")
        object.__setattr__(self, "matrix", mat)

    def validate(self) -> None:
        evals = hermitian_eigen(self.matrix).eigenvalues
        if float(evals[0]) < -1e-10:
            raise StateError(f"density matrix has negative eigenvalue {evals[0]:.3e}")


def _canonical_phase(amps: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first non-negligible amplitude is real positive."""
    for a in amps:
        if abs(a) > PHASE_EPS:
            return amps * (abs(a) / a)
    return amps


def _sym(n_qubits: int, amps, meta: dict | None = None) -> SymVector:
    amps = np.asarray(amps, dtype=complex)
    amps = amps / math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    return SymVector(n_qubits=n_qubits, amplitudes=_canonical_phase(amps),
                     meta=meta or {})


def build_dicke(n_qubits: int, l: int) -> SymVector:
    """The Dicke state with ``l`` excitations."""
    if not 0 <= l <= n_qubits:
        raise StateError(f"excitation number {l} outside 0..{n_qubits}")
    amps = np.zeros(n_qubits + 1)
    amps[l] = 1.0
    return _sym(n_qubits, amps)


@dataclass(frozen=True)
class ProbeSpec:
    """Declarative description of a probe state.

    Kinds: ``dicke`` (level l), ``superposition`` (equal-weight pair l, l2),
    ``ghz``, ``wwbar`` (the l = 1, N-1 pair), ``balanced`` (l = N/2, even N),
    ``optimal`` (extremal-eigenvector combination for a Hamiltonian),
    ``coherent`` (spin coherent state at polar/azimuth) and ``custom``.
    """

    kind: str
    n_qubits: int
    l: int | None = None
    l2: int | None = None
    hamiltonian: HamiltonianSpec | None = None
    polar: float = 0.0
    azimuth: float = 0.0
    state: SymVector | None = None

    def __post_init__(self):
        n = self.n_qubits
        if n < 1:
            raise StateError(f"need at least one qubit, got {n}")
        if self.kind == "dicke":
            if self.l is None or not 0 <= self.l <= n:
                raise StateError(f"dicke level {self.l} outside 0..{n}")
        elif self.kind == "superposition":
            if self.l is None or self.l2 is None:
                raise StateError("superposition needs two levels")
            for l in (self.l, self.l2):
                if not 0 <= l <= n:
                    raise StateError(f"level {l} outside 0..{n}")
            if self.l == self.l2:
                raise StateError("superposition levels must differ")
        elif self.kind == "ghz":
            pass
        elif self.kind == "wwbar":
            if n < 2:
                raise StateError("wwbar needs at least two qubits")
        elif self.kind == "balanced":
            if n % 2 != 0:
                raise StateError(f"balanced Dicke state needs even N, got {n}")
        elif self.kind == "optimal":
            if self.hamiltonian is None:
                raise StateError("optimal probe needs a HamiltonianSpec")
            if self.hamiltonian.n_qubits != n:
                raise StateError("hamiltonian qubit count disagrees with probe")
        elif self.kind == "coherent":
            if not (math.isfinite(self.polar) and math.isfinite(self.azimuth)):
                raise StateError("coherent-state angles must be finite")
        elif self.kind == "custom":
            if self.state is None or self.state.n_qubits != n:
                raise StateError("custom probe needs a SymVector of matching size")
        else:
            raise StateError(f"unknown probe kind {self.kind!r}")

    @classmethod
    def dicke(cls, n_qubits, l):
        return cls(kind="dicke", n_qubits=n_qubits, l=l)

    @classmethod
    def superposition(cls, n_qubits, l, l2):
        return cls(kind="superposition", n_qubits=n_qubits, l=l, l2=l2)

    @classmethod
    def ghz(cls, n_qubits):
        return cls(kind="ghz", n_qubits=n_qubits)

    @classmethod
    def wwbar(cls, n_qubits):
        return cls(kind="wwbar", n_qubits=n_qubits)

    @classmethod
    def balanced(cls, n_qubits):
        return cls(kind="balanced", n_qubits=n_qubits)

    @classmethod
    def optimal_for(cls, hamiltonian: HamiltonianSpec):
        return cls(kind="optimal", n_qubits=hamiltonian.n_qubits,
                   hamiltonian=hamiltonian)

    @classmethod
    def spin_coherent(cls, n_qubits, polar, azimuth):
        return cls(kind="coherent", n_qubits=n_qubits, polar=polar, azimuth=azimuth)

    @classmethod
    def custom(cls, state: SymVector):
        return cls(kind="custom", n_qubits=state.n_qubits, state=state)


def _equal_pair(n: int, la: int, lb: int) -> SymVector:
    amps = np.zeros(n + 1)
    amps[la] = 1.0
    amps[lb] = 1.0
    return _sym(n, amps)


# Optimal probes for the default-coupling two-body forms: weights on Dicke
# levels of (phi_max + phi_min)/sqrt(2), with degenerate extremes resolved by
# the published equal-weight combinations.
def _optimal_two_body_levels(r: int, n: int) -> dict[int, float]:
    root2 = 1.0 / math.sqrt(2.0)
    odd = n % 2 == 1
    if r in (1, 3):
        if odd:
            return {0: 0.5, n: 0.5, (n - 1) // 2: 0.5, (n + 1) // 2: 0.5}
        return {0: 0.5, n: 0.5, n // 2: root2}
    if r == 2:
        if odd:
            return {0: root2, (n + 1) // 2: root2}
        return {0: root2, n // 2: 0.5, (n + 2) // 2: 0.5}
    if odd:
        return {0: root2, (n + 1) // 2: 0.5, (n + 3) // 2: 0.5}
    return {0: root2, (n + 2) // 2: root2}


def _build_optimal(hspec: HamiltonianSpec) -> SymVector:
    n = hspec.n_qubits
    if hspec.kind == "linear":
        return build_probe(ProbeSpec.ghz(n))
    if hspec.kind == "two_body" and hspec.default_couplings():
        amps = np.zeros(n + 1)
        for l, w in _optimal_two_body_levels(hspec.r, n).items():
            amps[l] = w
        return _sym(n, amps)
    # no closed-form table for this Hamiltonian: fall back to the numeric
    # extremal eigenvectors, flagging degenerate extremes in the metadata
    op = build_hamiltonian(hspec.with_axis(Direction(0.0, 0.0)).with_basis("sym"))
    pair = extremal_eigenpair(op)
    amps = (pair.vector_max + pair.vector_min) / math.sqrt(2.0)
    meta = {"degenerate_max": pair.max_degenerate,
            "degenerate_min": pair.min_degenerate}
    return _sym(n, amps, meta=meta)


def build_probe(spec: ProbeSpec) -> SymVector:
    """Construct the symmetric-sector state described by a ProbeSpec.

    The global phase is fixed so the first non-zero amplitude is real and
    positive, making repeated constructions comparable elementwise.
    """
    n = spec.n_qubits
    if spec.kind == "dicke":
        return build_dicke(n, spec.l)
    if spec.kind == "superposition":
        return _equal_pair(n, spec.l, spec.l2)
    if spec.kind == "ghz":
        return _equal_pair(n, 0, n)
    if spec.kind == "wwbar":
        return _equal_pair(n, 1, n - 1)
    if spec.kind == "balanced":
        return build_dicke(n, n // 2)
    if spec.kind == "optimal":
        return _build_optimal(spec.hamiltonian)
    if spec.kind == "coherent":
        return rotate_sym(build_dicke(n, 0), Direction(spec.polar, spec.azimuth))
    return spec.state


def embed_full(state: SymVector, cap: int | None = None) -> FullState:
    """Embed a symmetric-sector state into the full 2^N space.

    A Dicke level l spreads uniformly over the C(N, l) bitstrings of weight l,
    so each such bitstring receives amplitude a_l / sqrt(C(N, l)).
    """
    n = state.n_qubits
    check_full_capacity(n, cap)
    idx = np.arange(2 ** n, dtype=np.int64)
    weights = np.zeros(2 ** n, dtype=np.int64)
    for bit in range(n):
        weights += (idx >> bit) & 1
    scale = state.amplitudes / np.sqrt([binomial(n, l) for l in range(n + 1)])
    return FullState(n_qubits=n, amplitudes=scale[weights])


def rotate_sym(state: SymVector, axis: Direction) -> SymVector:
    """Apply the rotation carrying the +z axis onto ``axis``.

    The rotation is exp(-i phi J_z) exp(-i theta J_y), so expectation values
    of J along ``axis`` in the rotated state equal those of J_z in the
    original.  No phase canonicalization is applied, keeping pairwise inner
    products exactly covariant.
    """
    n = state.n_qubits
    mz = n / 2.0 - np.arange(n + 1)
    ed = sym_jy_eigen(n)
    v = ed.eigenvectors
    rot = v @ (np.exp(-1j * axis.polar * ed.eigenvalues) * (v.conj().T @ state.amplitudes))
    rot = np.exp(-1j * axis.azimuth * mz) * rot
    return SymVector(n_qubits=n, amplitudes=rot)


def density_from_pure(state: FullState) -> DensityMatrix:
    """Rank-one density matrix |psi><psi| of a full-space pure state."""
    amps = state.amplitudes
    return DensityMatrix(n_qubits=state.n_qubits, matrix=np.outer(amps, amps.conj()))
