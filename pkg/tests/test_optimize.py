"""Axis optimization, separable bounds and the near-optimal pair scan."""

import math

import numpy as np
import pytest

from dickeprobe.operators import (
    Direction,
    HamiltonianSpec,
    build_hamiltonian,
    closed_form_extrema,
    j_along,
)
from dickeprobe.optimize import (
    AxisSearchConfig,
    OptimizeError,
    SeparableSearchConfig,
    near_optimal_scan,
    optimize_axis,
    qfi_linear_covariance,
    separable_bound,
)
from dickeprobe.qfi import qfi_pure
from dickeprobe.states import ProbeSpec, SymVector, build_probe


def _random_sym(rng, n):
    amps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return SymVector(n_qubits=n, amplitudes=amps / np.linalg.norm(amps))


def test_linear_covariance_matches_grid_search():
    rng = np.random.default_rng(71)
    for n in (3, 4, 5):
        probe = _random_sym(rng, n)
        axis, value = qfi_linear_covariance(probe)
        # Independent route: exhaustive axis sampling of 4 Var(J_n).
        best_sampled = 0.0
        for theta in np.linspace(0.0, math.pi, 60):
            for phi in np.linspace(0.0, 2.0 * math.pi, 120, endpoint=False):
                h = j_along(n, Direction(theta, phi), "sym")
                best_sampled = max(best_sampled, qfi_pure(probe, h).value)
        assert value >= best_sampled - 1e-9
        assert value == pytest.approx(best_sampled, rel=2e-3)
        attained = qfi_pure(probe, j_along(n, axis, "sym")).value
        assert attained == pytest.approx(value, abs=1e-9)


def test_linear_covariance_recovers_known_states():
    _, ghz = qfi_linear_covariance(build_probe(ProbeSpec.ghz(7)))
    assert ghz == pytest.approx(49.0, abs=1e-9)
    _, wwbar = qfi_linear_covariance(build_probe(ProbeSpec.wwbar(8)))
    assert wwbar == pytest.approx(36.0, abs=1e-9)


def test_optimize_axis_on_two_body_probe():
    hspec = HamiltonianSpec.two_body(2, 6)
    probe = build_probe(ProbeSpec.optimal_for(hspec))
    axis, result = optimize_axis(probe, hspec)
    direct = qfi_pure(probe, build_hamiltonian(hspec.with_axis(axis))).value
    assert result.value == pytest.approx(direct, abs=1e-9)
    # The optimal probe already attains the spectral bound along z.
    spectral = (12.0 - 0.0) ** 2
    assert result.value == pytest.approx(spectral, rel=1e-6)


def test_axis_search_config_validation():
    with pytest.raises(OptimizeError):
        AxisSearchConfig(polar_points=2)
    with pytest.raises(OptimizeError):
        SeparableSearchConfig(parametrization="grid")


def test_separable_bound_two_starts_agree():
    hspec = HamiltonianSpec.two_body(1, 6)
    a = separable_bound(hspec)
    b = separable_bound(hspec, SeparableSearchConfig(multi_start=48, seed=12))
    assert a.value == pytest.approx(b.value, rel=1e-6)


def test_separable_bound_below_entangled_optimum():
    for r in (1, 2, 3, 4):
        sep = separable_bound(HamiltonianSpec.two_body(r, 8)).value
        assert sep < closed_form_extrema(r, 8).fq_optimal


def test_separable_bound_beats_sampled_product_states():
    hspec = HamiltonianSpec.two_body(2, 5)
    bound = separable_bound(hspec).value
    h = build_hamiltonian(hspec)
    for theta in np.linspace(0.0, math.pi, 41):
        probe = build_probe(ProbeSpec.spin_coherent(5, theta, 0.0))
        assert qfi_pure(probe, h).value <= bound + 1e-9


def test_near_optimal_scan_linear_top_pair():
    entries = near_optimal_scan(4, HamiltonianSpec.linear(4))
    top = entries[0]
    assert (top.l, top.l2) == (1, 3)
    assert top.qfi == pytest.approx(16.0, abs=1e-6)
    # The extreme-level pair is the optimal probe itself, not scanned.
    assert all((e.l, e.l2) != (0, 4) for e in entries)


def test_near_optimal_scan_excludes_flipped_extremal_pairs():
    # h(M) = M + M^2 at N = 5 peaks at l = 0 (M = 5/2) with minimum at l = 3
    # (M = -1/2), so (0, 3) and its spin flip (2, 5) both attain the spectral
    # bound and are skipped, while the near-optimal (0, 2) stays in.
    entries = near_optimal_scan(5, HamiltonianSpec.two_body(2, 5))
    pairs = [(e.l, e.l2) for e in entries]
    assert (0, 3) not in pairs
    assert (2, 5) not in pairs
    assert pairs[0] == (0, 2)


def test_near_optimal_scan_sorted_and_bounded():
    hspec = HamiltonianSpec.two_body(2, 8)
    entries = near_optimal_scan(8, hspec)
    values = [e.qfi for e in entries]
    # Ordering resolves ties at the rank resolution, so the sequence is
    # descending up to that granularity (spin-flipped pairs tie exactly).
    assert all(b <= a + 1e-6 for a, b in zip(values, values[1:]))
    assert values[0] == pytest.approx(359.53, rel=0.01)
    bound = (20.0 - 0.0) ** 2
    assert all(v <= bound + 1e-9 for v in values)


def test_scan_entry_axis_reproduces_its_qfi():
    hspec = HamiltonianSpec.two_body(1, 8)
    top = near_optimal_scan(8, hspec)[0]
    probe = build_probe(ProbeSpec.superposition(8, top.l, top.l2))
    attained = qfi_pure(probe, build_hamiltonian(hspec.with_axis(top.axis))).value
    assert attained == pytest.approx(top.qfi, abs=1e-9)
