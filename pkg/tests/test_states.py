"""Probe-state construction, embedding and rotation."""

import math

import numpy as np
import pytest

from dickeprobe.caps import CapacityError
from dickeprobe.operators import Direction, HamiltonianSpec
from dickeprobe.states import (
    ProbeSpec,
    StateError,
    SymVector,
    binomial,
    build_dicke,
    build_probe,
    density_from_pure,
    embed_full,
    m_value,
    rotate_sym,
)


def test_binomial_matches_bitstring_enumeration():
    # Oracle: count the weight-k bitstrings of 4 bits explicitly.
    for k in range(5):
        count = sum(1 for x in range(16) if bin(x).count("1") == k)
        assert binomial(4, k) == count
    assert binomial(12, 5) == math.comb(12, 5)


def test_m_value_is_half_spin_projection():
    assert m_value(4, 0) == 2.0
    assert m_value(4, 4) == -2.0
    assert m_value(5, 2) == 0.5


def test_dicke_embedding_weights_match_enumeration():
    full = embed_full(build_dicke(4, 2))
    for index, amp in enumerate(full.amplitudes):
        if bin(index).count("1") == 2:
            assert amp == pytest.approx(1.0 / math.sqrt(6.0))
        else:
            assert amp == 0.0


def test_dicke_level_out_of_range():
    with pytest.raises(StateError):
        build_dicke(4, 5)


def test_probe_spec_validation_errors():
    with pytest.raises(StateError):
        ProbeSpec.superposition(4, 2, 2)
    with pytest.raises(StateError):
        ProbeSpec.superposition(4, 0, 5)
    with pytest.raises(StateError):
        ProbeSpec.balanced(5)
    with pytest.raises(StateError):
        ProbeSpec(kind="mystery", n_qubits=3)
    with pytest.raises(StateError):
        ProbeSpec(kind="optimal", n_qubits=3)


def test_ghz_is_equal_weight_extreme_pair():
    state = build_probe(ProbeSpec.ghz(5))
    expected = np.zeros(6)
    expected[0] = expected[5] = 1.0 / math.sqrt(2.0)
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)


def test_wwbar_is_the_1_nminus1_pair():
    state = build_probe(ProbeSpec.wwbar(6))
    expected = np.zeros(7)
    expected[1] = expected[5] = 1.0 / math.sqrt(2.0)
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)


def test_balanced_is_the_central_dicke_level():
    state = build_probe(ProbeSpec.balanced(6))
    np.testing.assert_allclose(state.amplitudes,
                               build_dicke(6, 3).amplitudes, atol=1e-15)


def test_optimal_probe_for_default_two_body_form():
    # h(M) = M + M^2 at N = 8 peaks at l = 0 (h = 20) with minimum h = 0 on
    # the degenerate pair l = 4, 5; the published probe weights are
    # 1/sqrt2 on l = 0 and 1/2 on each minimal level.
    state = build_probe(ProbeSpec.optimal_for(HamiltonianSpec.two_body(2, 8)))
    expected = np.zeros(9)
    expected[0] = 1.0 / math.sqrt(2.0)
    expected[4] = expected[5] = 0.5
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)


def test_spin_coherent_matches_rotated_ground_state():
    axis = Direction(0.9, 2.1)
    coherent = build_probe(ProbeSpec.spin_coherent(4, 0.9, 2.1))
    rotated = rotate_sym(build_dicke(4, 0), axis)
    np.testing.assert_allclose(coherent.amplitudes, rotated.amplitudes,
                               atol=1e-12)


def test_spin_coherent_amplitudes_are_binomial():
    n, theta = 5, 0.7
    state = build_probe(ProbeSpec.spin_coherent(n, theta, 0.0))
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    expected = np.array([math.sqrt(binomial(n, l)) * c ** (n - l) * s ** l
                         for l in range(n + 1)])
    np.testing.assert_allclose(np.abs(state.amplitudes), expected, atol=1e-12)


def test_rotate_sym_preserves_norm_and_identity_at_zero():
    rng = np.random.default_rng(23)
    amps = rng.normal(size=7) + 1j * rng.normal(size=7)
    state = SymVector(n_qubits=6, amplitudes=amps / np.linalg.norm(amps))
    rotated = rotate_sym(state, Direction(1.2, 0.4))
    assert np.linalg.norm(rotated.amplitudes) == pytest.approx(1.0)
    unrotated = rotate_sym(state, Direction(0.0, 0.0))
    np.testing.assert_allclose(unrotated.amplitudes, state.amplitudes,
                               atol=1e-12)


def test_sym_vector_requires_normalization():
    with pytest.raises(StateError):
        SymVector(n_qubits=2, amplitudes=np.array([1.0, 1.0, 0.0]))


def test_embed_full_capacity_guard():
    state = build_dicke(13, 0)
    with pytest.raises(CapacityError):
        embed_full(state)
    full = embed_full(state, cap=13)
    assert full.amplitudes.shape == (2 ** 13,)


def test_density_from_pure_is_rank_one_projector():
    rho = density_from_pure(embed_full(build_probe(ProbeSpec.ghz(3))))
    mat = rho.matrix
    assert np.trace(mat).real == pytest.approx(1.0)
    np.testing.assert_allclose(mat, mat.conj().T, atol=1e-15)
    np.testing.assert_allclose(mat @ mat, mat, atol=1e-12)


def test_custom_probe_roundtrip():
    base = build_dicke(3, 1)
    state = build_probe(ProbeSpec.custom(base))
    np.testing.assert_allclose(state.amplitudes, base.amplitudes, atol=1e-15)
