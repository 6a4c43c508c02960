"""Quantum and classical Fisher information routes."""

import math

import numpy as np
import pytest

from dickeprobe.linalg import jacobi_eigen
from dickeprobe.noise import NoiseSpec, apply_noise
from dickeprobe.operators import Direction, HamiltonianSpec, build_hamiltonian, collective_spin, j_along
from dickeprobe.qfi import (
    PovmElement,
    QfiError,
    classical_fi,
    encode,
    qfi_mixed,
    qfi_pure,
    sensitivity,
    sld_operator,
)
from dickeprobe.states import (
    DensityMatrix,
    ProbeSpec,
    SymVector,
    build_dicke,
    build_probe,
    density_from_pure,
    embed_full,
)


def _random_sym(rng, n):
    amps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return SymVector(n_qubits=n, amplitudes=amps / np.linalg.norm(amps))


def _random_full_rank_density(rng, n):
    dim = 2 ** n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    mat = a @ a.conj().T
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(n_qubits=n, matrix=mat / np.trace(mat).real)


def test_sensitivity_is_inverse_root():
    assert sensitivity(4.0) == 0.5
    assert sensitivity(0.0) == math.inf
    with pytest.raises(QfiError):
        sensitivity(-1.0)


def test_pure_qfi_is_four_times_variance():
    rng = np.random.default_rng(31)
    state = _random_sym(rng, 5)
    h = collective_spin(5, "z", "sym")
    mean = np.vdot(state.amplitudes, h.matrix @ state.amplitudes).real
    second = np.vdot(h.matrix @ state.amplitudes,
                     h.matrix @ state.amplitudes).real
    result = qfi_pure(state, h)
    assert result.value == pytest.approx(4.0 * (second - mean ** 2), rel=1e-12)
    assert result.sensitivity == pytest.approx(1.0 / math.sqrt(result.value))


def test_ghz_reaches_the_heisenberg_value():
    for n in (2, 5, 8):
        state = build_probe(ProbeSpec.ghz(n))
        value = qfi_pure(state, collective_spin(n, "z", "sym")).value
        assert value == pytest.approx(n * n, abs=1e-10)


def test_coherent_state_along_its_own_axis_is_insensitive():
    state = build_probe(ProbeSpec.spin_coherent(4, 0.0, 0.0))
    result = qfi_pure(state, collective_spin(4, "z", "sym"))
    assert result.value == pytest.approx(0.0, abs=1e-12)
    assert result.sensitivity == math.inf


def test_qfi_pure_rejects_basis_mismatch():
    state = build_dicke(3, 1)
    with pytest.raises(QfiError):
        qfi_pure(state, collective_spin(3, "z", "full"))
    with pytest.raises(QfiError):
        qfi_pure(state, collective_spin(4, "z", "sym"))


def test_mixed_qfi_reduces_to_pure_on_projectors():
    rng = np.random.default_rng(37)
    for n in (2, 3):
        state = _random_sym(rng, n)
        axis = Direction(1.0, 0.5)
        pure = qfi_pure(state, j_along(n, axis, "sym")).value
        rho = density_from_pure(embed_full(state))
        mixed = qfi_mixed(rho, j_along(n, axis, "full")).value
        assert mixed == pytest.approx(pure, abs=1e-8)


def test_mixed_qfi_of_maximally_mixed_state_vanishes():
    n = 3
    rho = DensityMatrix(n_qubits=n, matrix=np.eye(8, dtype=complex) / 8.0)
    value = qfi_mixed(rho, collective_spin(n, "z", "full")).value
    assert value == pytest.approx(0.0, abs=1e-12)


def test_mixed_qfi_jacobi_backend_agrees_with_lapack():
    rng = np.random.default_rng(41)
    rho = _random_full_rank_density(rng, 3)
    h = collective_spin(3, "x", "full")
    default = qfi_mixed(rho, h).value
    jacobi = qfi_mixed(rho, h, eigensolver=jacobi_eigen).value
    assert jacobi == pytest.approx(default, abs=1e-9)


def test_mixed_qfi_bounded_by_spectral_gap():
    rho = apply_noise(
        density_from_pure(embed_full(build_probe(ProbeSpec.ghz(4)))),
        NoiseSpec("phase_damping", 0.4))
    value = qfi_mixed(rho, collective_spin(4, "z", "full")).value
    assert value <= 16.0 + 1e-9


def test_sld_defines_the_derivative_and_the_qfi():
    rng = np.random.default_rng(43)
    rho = _random_full_rank_density(rng, 3)
    h = collective_spin(3, "z", "full")
    sld = sld_operator(rho, h)
    deriv = -1j * (h.matrix @ rho.matrix - rho.matrix @ h.matrix)
    residual = 0.5 * (sld.matrix @ rho.matrix + rho.matrix @ sld.matrix) - deriv
    assert np.max(np.abs(residual)) < 1e-9
    via_sld = np.trace(rho.matrix @ sld.matrix @ sld.matrix).real
    assert via_sld == pytest.approx(qfi_mixed(rho, h).value, abs=1e-8)
    assert np.trace(rho.matrix @ sld.matrix).real == pytest.approx(0.0, abs=1e-10)


def test_encode_is_unitary_and_trivial_at_zero():
    rng = np.random.default_rng(47)
    rho = _random_full_rank_density(rng, 2)
    h = collective_spin(2, "x", "full")
    rotated = encode(rho, h, 0.83)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(rotated.matrix)),
                               np.sort(np.linalg.eigvalsh(rho.matrix)),
                               atol=1e-10)
    unrotated = encode(rho, h, 0.0)
    np.testing.assert_allclose(unrotated.matrix, rho.matrix, atol=1e-12)
    diag = DensityMatrix(n_qubits=2, matrix=np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex))
    hz = collective_spin(2, "z", "full")
    np.testing.assert_allclose(encode(diag, hz, 1.7).matrix, diag.matrix,
                               atol=1e-12)


def test_sld_eigenbasis_measurement_saturates_the_qfi():
    rng = np.random.default_rng(53)
    rho = _random_full_rank_density(rng, 2)
    h = collective_spin(2, "z", "full")
    sld = sld_operator(rho, h)
    vecs = np.linalg.eigh(sld.matrix)[1]
    povm = [PovmElement(label=f"e{k}",
                        matrix=np.outer(vecs[:, k], vecs[:, k].conj()))
            for k in range(4)]
    cfi = classical_fi(rho, h, povm)
    qfi = qfi_mixed(rho, h).value
    assert cfi == pytest.approx(qfi, rel=1e-8)


def test_computational_basis_readout_of_ghz_carries_no_phase():
    rho = density_from_pure(embed_full(build_probe(ProbeSpec.ghz(3))))
    h = collective_spin(3, "z", "full")
    povm = [PovmElement(label=f"b{k}", matrix=np.diag(np.eye(8)[k]).astype(complex))
            for k in range(8)]
    assert classical_fi(rho, h, povm) == pytest.approx(0.0, abs=1e-12)


def test_classical_fi_requires_a_complete_povm():
    rho = density_from_pure(embed_full(build_probe(ProbeSpec.ghz(2))))
    h = collective_spin(2, "z", "full")
    half = [PovmElement(label="only", matrix=0.5 * np.eye(4, dtype=complex))]
    with pytest.raises(QfiError):
        classical_fi(rho, h, half)


def test_two_body_encoding_qfi_example():
    # Equal superposition of the extremal levels of h(M) = M + M^2 at N = 8
    # attains the squared spectral gap (20 - 0)^2.
    probe = build_probe(ProbeSpec.optimal_for(HamiltonianSpec.two_body(2, 8)))
    value = qfi_pure(probe, build_hamiltonian(HamiltonianSpec.two_body(2, 8))).value
    assert value == pytest.approx(400.0, abs=1e-9)
