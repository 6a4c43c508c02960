"""Single-qubit Kraus channels and global depolarizing noise.

Local channels act independently on every qubit of a full-space density
matrix; identical single-qubit channels commute, so the application order does
not matter.  Noise is applied to the probe before phase encoding (the
spectral QFI is invariant under the encoding unitary, so the noisy probe can
be decomposed directly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix

LOCAL_KINDS = ("phase_damping", "amplitude_damping")
GLOBAL_KINDS = ("global_depolarizing",)

_ALIASES = {
    "phase": "phase_damping",
    "pd": "phase_damping",
    "amplitude": "amplitude_damping",
    "ad": "amplitude_damping",
    "depolarizing": "global_depolarizing",
    "depol": "global_depolarizing",
}


class NoiseError(ValueError):
    """Unknown channel, strength out of range, or wrong application mode."""


def canonical_kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in LOCAL_KINDS + GLOBAL_KINDS:
        raise NoiseError(f"unknown noise kind {kind!r}")
    return kind


@dataclass(frozen=True)
class NoiseSpec:
    """A channel family and its strength p in [0, 1]."""

    kind: str
    p: float

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        if not (0.0 <= self.p <= 1.0) or not math.isfinite(self.p):
            raise NoiseError(f"noise strength {self.p!r} outside [0, 1]")

    @property
    def is_local(self) -> bool:
        return self.kind in LOCAL_KINDS


@dataclass(frozen=True)
class KrausSet:
    """Single-qubit Kraus operators of a local channel."""

    kind: str
    p: float
    operators: tuple[np.ndarray, ...]

    def completeness_defect(self) -> float:
        total = sum(e.conj().T @ e for e in self.operators)
        return float(np.max(np.abs(total - np.eye(2))))


def kraus_for(spec: NoiseSpec) -> KrausSet:
    """Kraus operators of a local channel; global channels have none."""
    if not spec.is_local:
        raise NoiseError(f"{spec.kind} is a global channel with no Kraus form here")
    p = spec.p
    if spec.kind == "amplitude_damping":
        ops = (np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex),
               np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex))
    else:
        ops = (math.sqrt(1.0 - p) * np.eye(2, dtype=complex),
               np.array([[math.sqrt(p), 0.0], [0.0, 0.0]], dtype=complex),
               np.array([[0.0, 0.0], [0.0, math.sqrt(p)]], dtype=complex))
    return KrausSet(kind=spec.kind, p=p, operators=ops)


def apply_local(rho: DensityMatrix, spec: NoiseSpec) -> DensityMatrix:
    """Apply a single-qubit channel to every qubit of ``rho``."""
    if not spec.is_local:
        raise NoiseError(f"{spec.kind} must be applied with apply_global_depolarizing")
    n = rho.n_qubits
    d = 2 ** n
    ops = kraus_for(spec).operators
    mat = rho.matrix
    for q in range(n):
        left = 2 ** q
        right = 2 ** (n - 1 - q)
        r6 = mat.reshape(left, 2, right, left, 2, right)
        acc = np.zeros_like(r6)
        for e in ops:
            tmp = np.einsum("ab,LbRMcS->LaRMcS", e, r6)
            acc += np.einsum("LaRMcS,dc->LaRMdS", tmp, e.conj())
        mat = acc.reshape(d, d)
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(n_qubits=n, matrix=mat)


def apply_global_depolarizing(rho: DensityMatrix, p: float) -> DensityMatrix:
    """Mix ``rho`` with the maximally mixed state: (1-p) rho + p I / 2^N."""
    spec = NoiseSpec(kind="global_depolarizing", p=p)  # validates p
    d = rho.matrix.shape[0]
    mat = (1.0 - spec.p) * rho.matrix + (spec.p / d) * np.eye(d, dtype=complex)
    return DensityMatrix(n_qubits=rho.n_qubits, matrix=mat)


def apply_noise(rho: DensityMatrix, spec: NoiseSpec) -> DensityMatrix:
    """Dispatch a NoiseSpec to the local or global application path."""
    if spec.is_local:
        return apply_local(rho, spec)
    return apply_global_depolarizing(rho, spec.p)
