"""Encoding-axis optimization, separable bounds and near-optimal level scans.

The probe is held fixed in the z basis and the Hamiltonian axis is the search
variable.  Every supported Hamiltonian is a polynomial in J_n, so its variance
in a probe equals the variance of the corresponding diagonal polynomial of
J_z in the counter-rotated probe; the search evaluates that diagonal form,
which keeps the coarse grid fully vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import Direction, HamiltonianSpec, collective_spin, diagonal_form, sym_jy_eigen
from .qfi import QfiResult, sensitivity
from .states import ProbeSpec, SymVector, binomial, build_probe

TWO_PI = 2.0 * math.pi
_RANK_RESOLUTION = 1e-9


class OptimizeError(ValueError):
    """Invalid search configuration or incompatible inputs."""


@dataclass(frozen=True)
class AxisSearchConfig:
    """Grid resolution and pattern-search termination for axis optimization."""

    polar_points: int = 64
    azimuth_points: int = 128
    refine_step_tol: float = 1e-6
    max_refine_iters: int = 200

    def __post_init__(self):
        if self.polar_points < 4 or self.azimuth_points < 4:
            raise OptimizeError("grid needs at least 4 points per angle")
        if self.refine_step_tol <= 0:
            raise OptimizeError("refinement tolerance must be positive")
        if self.max_refine_iters < 1:
            raise OptimizeError("need at least one refinement iteration")


@dataclass(frozen=True)
class SeparableSearchConfig:
    """Product-state bound search settings.

    ``parametrization`` selects the identical-qubit coherent ansatz (1-D
    golden-section over the cosine of the polar angle) or the general
    2N-angle product search used to validate it.
    """

    parametrization: str = "symmetric_coherent"
    multi_start: int = 32
    seed: int = 7

    def __post_init__(self):
        if self.parametrization not in ("symmetric_coherent", "general_product"):
            raise OptimizeError(f"unknown parametrization {self.parametrization!r}")
        if self.multi_start < 1:
            raise OptimizeError("need at least one start")


class _AxisObjective:
    """4 Var(H(axis)) for a fixed symmetric-sector probe.

    With R(theta, phi) = exp(-i phi J_z) exp(-i theta J_y) one has
    H(axis) = R h(J_z) R^dag, so the variance equals that of the diagonal
    values h(M) in the counter-rotated state exp(+i theta J_y) exp(+i phi J_z) psi.
    """

    def __init__(self, probe: SymVector, hspec: HamiltonianSpec):
        if probe.n_qubits != hspec.n_qubits:
            raise OptimizeError("probe and hamiltonian qubit counts disagree")
        n = probe.n_qubits
        self.mz = n / 2.0 - np.arange(n + 1)
        ed = sym_jy_eigen(n)
        self._vy = ed.eigenvectors
        self._my = ed.eigenvalues
        self._psi = probe.amplitudes
        self._h = diagonal_form(hspec, self.mz)
        self._h2 = self._h ** 2

    def _rotated(self, theta: float, phi: float) -> np.ndarray:
        a = np.exp(1j * phi * self.mz) * self._psi
        return self._vy @ (np.exp(1j * theta * self._my) * (self._vy.conj().T @ a))

    def value(self, theta: float, phi: float) -> float:
        probs = np.abs(self._rotated(theta, phi)) ** 2
        e1 = float(probs @ self._h)
        e2 = float(probs @ self._h2)
        return 4.0 * max(e2 - e1 * e1, 0.0)

    def grid(self, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
        a = self._psi[:, None] * np.exp(1j * np.outer(self.mz, phis))
        a = self._vy.conj().T @ a
        out = np.empty((len(thetas), len(phis)))
        for i, theta in enumerate(thetas):
            b = self._vy @ (np.exp(1j * theta * self._my)[:, None] * a)
            probs = np.abs(b) ** 2
            e1 = self._h @ probs
            e2 = self._h2 @ probs
            out[i] = 4.0 * np.maximum(e2 - e1 * e1, 0.0)
        return out


def _pattern_search(fn, theta, phi, best, step_theta, step_phi, tol, max_iters):
    """Compass search on (theta, phi); theta clamped to [0, pi], phi wrapped."""
    for _ in range(max_iters):
        if max(step_theta, step_phi) < tol:
            break
        candidates = (
            (min(theta + step_theta, math.pi), phi),
            (max(theta - step_theta, 0.0), phi),
            (theta, (phi + step_phi) % TWO_PI),
            (theta, (phi - step_phi) % TWO_PI),
        )
        values = [fn(t, p) for t, p in candidates]
        k = int(np.argmax(values))
        if values[k] > best:
            theta, phi = candidates[k]
            best = values[k]
        else:
            step_theta *= 0.5
            step_phi *= 0.5
    return theta, phi, best


def optimize_axis(probe: SymVector, hspec: HamiltonianSpec,
                  config: AxisSearchConfig = AxisSearchConfig(),
                  ) -> tuple[Direction, QfiResult]:
    """Maximize the pure-state QFI over the Hamiltonian axis.

    Coarse polar/azimuth grid followed by pattern-search refinement with the
    grid spacing as the initial step.  Deterministic: grid ties resolve to the
    first (row-major) maximum and refinement moves only on strict improvement.
    """
    obj = _AxisObjective(probe, hspec)
    thetas = np.linspace(0.0, math.pi, config.polar_points)
    phis = np.linspace(0.0, TWO_PI, config.azimuth_points, endpoint=False)
    grid = obj.grid(thetas, phis)
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    theta, phi, best = _pattern_search(
        obj.value, float(thetas[i]), float(phis[j]), float(grid[i, j]),
        math.pi / (config.polar_points - 1), TWO_PI / config.azimuth_points,
        config.refine_step_tol, config.max_refine_iters)
    result = QfiResult(value=best, sensitivity=sensitivity(best),
                       method="pure_variance")
    return Direction(polar=theta, azimuth=phi % TWO_PI), result


def qfi_linear_covariance(probe: SymVector) -> tuple[Direction, float]:
    """Exact axis optimum for the linear encoding via the spin covariance.

    The linear QFI along n is 4 n^T Gamma n with
    Gamma_ab = <J_a J_b + J_b J_a>/2 - <J_a><J_b>; the optimum is four times
    the leading eigenvalue of Gamma, attained along its eigenvector.
    """
    n = probe.n_qubits
    psi = probe.amplitudes
    vecs = [collective_spin(n, c, "sym").matrix @ psi for c in ("x", "y", "z")]
    means = [float(np.real(np.vdot(psi, v))) for v in vecs]
    gamma = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            gamma[a, b] = float(np.real(np.vdot(vecs[a], vecs[b]))) - means[a] * means[b]
    gamma = 0.5 * (gamma + gamma.T)
    vals, eigvecs = np.linalg.eigh(gamma)
    axis = eigvecs[:, -1]
    axis = axis * math.copysign(1.0, axis[int(np.argmax(np.abs(axis)))])
    return Direction.from_vector(axis), 4.0 * float(vals[-1])


@dataclass(frozen=True)
class SeparableBoundResult:
    """Best product-state QFI found and the parameters attaining it."""

    value: float
    parametrization: str
    cos_polar: float | None = None
    populations: tuple[float, ...] | None = None


def _binomial_pmf(n: int, q: float) -> np.ndarray:
    k = np.arange(n + 1)
    comb = np.array([binomial(n, int(kk)) for kk in k])
    return comb * np.power(q, k) * np.power(1.0 - q, n - k)


def _product_objective(hspec: HamiltonianSpec, populations: np.ndarray) -> float:
    """4 Var(h(J_z)) in a product state with given excitation populations.

    h(J_z) is diagonal in the computational basis, so only the per-qubit
    excitation probabilities matter; the J_z distribution is the convolution
    of N two-point distributions.
    """
    n = hspec.n_qubits
    dist = np.array([1.0])
    for p in populations:
        dist = np.convolve(dist, [1.0 - p, p])
    m = n / 2.0 - np.arange(n + 1)
    h = diagonal_form(hspec, m)
    e1 = float(dist @ h)
    e2 = float(dist @ h ** 2)
    return 4.0 * max(e2 - e1 * e1, 0.0)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fn, lo, hi, tol=1e-12, max_iters=200):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iters):
        if abs(b - a) < tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)


def _symmetric_coherent_bound(hspec: HamiltonianSpec, starts: int) -> SeparableBoundResult:
    n = hspec.n_qubits
    m = n / 2.0 - np.arange(n + 1)
    h = diagonal_form(hspec, m)
    h2 = h ** 2

    def objective(c: float) -> float:
        pmf = _binomial_pmf(n, (1.0 - c) / 2.0)
        e1 = float(pmf @ h)
        e2 = float(pmf @ h2)
        return 4.0 * max(e2 - e1 * e1, 0.0)

    edges = np.linspace(-1.0, 1.0, starts + 1)
    best_c, best_v = -1.0, objective(-1.0)
    for lo, hi in zip(edges[:-1], edges[1:]):
        c, v = _golden_max(objective, float(lo), float(hi))
        if v > best_v:
            best_c, best_v = c, v
    v_hi = objective(1.0)
    if v_hi > best_v:
        best_c, best_v = 1.0, v_hi
    return SeparableBoundResult(value=best_v, parametrization="symmetric_coherent",
                                cos_polar=best_c)


def _general_product_bound(hspec: HamiltonianSpec,
                           config: SeparableSearchConfig) -> SeparableBoundResult:
    n = hspec.n_qubits
    sym = _symmetric_coherent_bound(hspec, config.multi_start)
    rng = np.random.default_rng(config.seed)
    # angles (theta_i, phi_i) per qubit; the objective depends only on the
    # populations sin^2(theta_i / 2), so phi directions are flat
    theta_sym = math.acos(min(1.0, max(-1.0, sym.cos_polar)))
    starts = [np.concatenate([np.full(n, theta_sym), np.zeros(n)])]
    for _ in range(config.multi_start - 1):
        starts.append(np.concatenate([rng.uniform(0.0, math.pi, n),
                                      rng.uniform(0.0, TWO_PI, n)]))

    def objective(angles: np.ndarray) -> float:
        pops = np.sin(angles[:n] / 2.0) ** 2
        return _product_objective(hspec, pops)

    best_angles, best_v = None, -1.0
    for x0 in starts:
        x = x0.copy()
        v = objective(x)
        step = 0.3
        while step >= 1e-6:
            improved = False
            for i in range(2 * n):
                for delta in (step, -step):
                    trial = x.copy()
                    trial[i] += delta
                    tv = objective(trial)
                    if tv > v + 1e-15:
                        x, v = trial, tv
                        improved = True
            if not improved:
                step *= 0.5
        if v > best_v:
            best_angles, best_v = x, v
    pops = tuple(float(s) for s in np.sin(best_angles[:n] / 2.0) ** 2)
    return SeparableBoundResult(value=best_v, parametrization="general_product",
                                populations=pops)


def separable_bound(hspec: HamiltonianSpec,
                    config: SeparableSearchConfig = SeparableSearchConfig(),
                    ) -> SeparableBoundResult:
    """Maximum QFI over product probes for a Hamiltonian family.

    The bound is axis-independent (rotating every qubit maps one axis to
    another), so it is evaluated with the axis along z.
    """
    if config.parametrization == "symmetric_coherent":
        return _symmetric_coherent_bound(hspec, config.multi_start)
    return _general_product_bound(hspec, config)


@dataclass(frozen=True)
class ScanEntry:
    """One equal-weight Dicke pair with its optimized axis and QFI."""

    l: int
    l2: int
    axis: Direction
    qfi: float


def _extremal_levels(hspec: HamiltonianSpec) -> tuple[set[int], set[int]]:
    """Dicke levels attaining the max and min of the diagonal (z-axis) spectrum."""
    n = hspec.n_qubits
    h = diagonal_form(hspec, n / 2.0 - np.arange(n + 1))
    hi, lo = float(np.max(h)), float(np.min(h))
    tol_hi = _RANK_RESOLUTION * (1.0 + abs(hi))
    tol_lo = _RANK_RESOLUTION * (1.0 + abs(lo))
    return (set(int(l) for l in np.flatnonzero(h >= hi - tol_hi)),
            set(int(l) for l in np.flatnonzero(h <= lo + tol_lo)))


def near_optimal_scan(n_qubits: int, hspec: HamiltonianSpec,
                      config: AxisSearchConfig = AxisSearchConfig(),
                      ) -> list[ScanEntry]:
    """Axis-optimized QFI for every near-optimal equal-weight Dicke pair l < l2.

    Pairs joining a maximal and a minimal level of the diagonal spectrum are
    skipped: such a pair is an equal superposition of extremal eigenvectors,
    i.e. the optimal-probe construction itself (it attains the spectral bound
    (lam_max - lam_min)^2 exactly), not a member of the near-optimal family.
    The antipodal axis reverses the spectrum (M -> -M), so spin-flipped
    images (N - l2, N - l) of extremal pairs attain the bound as well and
    are skipped too.  For the linear encoding this excludes exactly the GHZ
    pair (0, N).  Entries are sorted by decreasing QFI with ties (at 1e-9
    resolution) broken by smaller l + l2, then smaller l.
    """
    if hspec.n_qubits != n_qubits:
        raise OptimizeError("hamiltonian qubit count disagrees with scan size")
    top_levels, bottom_levels = _extremal_levels(hspec)

    def extremal(a: int, b: int) -> bool:
        return ((a in top_levels and b in bottom_levels)
                or (a in bottom_levels and b in top_levels))

    entries = []
    for l in range(n_qubits + 1):
        for l2 in range(l + 1, n_qubits + 1):
            if extremal(l, l2) or extremal(n_qubits - l2, n_qubits - l):
                continue
            probe = build_probe(ProbeSpec.superposition(n_qubits, l, l2))
            axis, res = optimize_axis(probe, hspec, config)
            entries.append(ScanEntry(l=l, l2=l2, axis=axis, qfi=res.value))
    entries.sort(key=lambda e: (-round(e.qfi / _RANK_RESOLUTION), e.l + e.l2, e.l))
    return entries
