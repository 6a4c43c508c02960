"""Benchmark tables and figure data series.

This module computes everything the command line prints or writes: the four
reference tables with embedded expected values and pass/fail verdicts, and
the CSV/JSON row series behind the seven benchmark figures.  Row output is
deterministic: sweep points are assembled by index regardless of the worker
pool, floats are rendered with a fixed format, and an infinite sensitivity is
serialized as an empty CSV cell (JSON ``null``), never as a sentinel number.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eigen
from .noise import NoiseSpec, canonical_kind
from .operators import (
    TWO_BODY_RS,
    Direction,
    HamiltonianSpec,
    Z_AXIS,
    build_hamiltonian,
    closed_form_extrema,
)
from .optimize import (
    TWO_PI,
    AxisSearchConfig,
    _pattern_search,
    near_optimal_scan,
    optimize_axis,
    qfi_linear_covariance,
    separable_bound,
)
from .qfi import EIGENVALUE_CUTOFF, qfi_mixed, qfi_pure, sensitivity
from .states import ProbeSpec, build_probe, density_from_pure, embed_full
from .noise import apply_noise

SCHEMA_ID = "dickeprobe-rows-v1"
CSV_COLUMNS = ("schema", "probe", "hamiltonian", "N", "noise", "p",
               "axis_theta", "axis_phi", "fq", "dtheta",
               "ref_snl", "ref_hl", "ref_nlsnl", "ref_nlhl")
FIGURE_PRESETS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")
ALL_NOISES = ("phase_damping", "amplitude_damping", "global_depolarizing")
DEFAULT_P_GRID = (0.0, 1.0, 0.02)

# Reported benchmark values the tables reproduce.  Pairs are the published
# level labels; spin-flipped pairs (N - l2, N - l) are accepted as equal.
TABLE1_REFERENCE = {
    3: ((0, 2), 8.46),
    4: ((1, 3), 16.0),
    5: ((1, 3), 23.48),
    6: ((2, 4), 34.0),
    7: ((2, 4), 44.49),
    8: ((3, 5), 58.0),
}
# Per two-body form r at N=8: separable bound, probe QFI, sensitivity at the
# separable bound (NL-SNL) and at the probe value (NL-HL).
TABLE3_REFERENCE = {
    1: (105.54, 256.0, 0.097, 0.063),
    2: (151.65, 400.0, 0.081, 0.05),
    3: (26.39, 64.0, 0.195, 0.125),
    4: (52.14, 144.0, 0.138, 0.083),
}
TABLE4_REFERENCE = {
    (5, 1): ((0, 4), 33.67),
    (5, 2): ((0, 2), 72.37),
    (5, 3): ((0, 4), 8.41),
    (5, 4): ((0, 2), 33.9),
    (6, 1): ((1, 5), 79.75),
    (6, 2): ((0, 2), 134.47),
    (6, 3): ((1, 5), 19.95),
    (6, 4): ((0, 2), 57.12),
    (7, 1): ((0, 2), 133.93),
    (7, 2): ((0, 2), 228.2),
    (7, 3): ((0, 2), 33.5),
    (7, 4): ((0, 2), 89.72),
    (8, 1): ((0, 2), 226.41),
    (8, 2): ((0, 2), 359.53),
    (8, 3): ((0, 2), 56.69),
    (8, 4): ((0, 4), 144.0),
}


class ConfigError(ValueError):
    """Invalid run configuration (bad flag value, unknown config key, ...)."""


# ---------------------------------------------------------------------------
# Run configuration


def parse_p_grid(text: str) -> tuple[float, float, float]:
    """Parse a ``start:stop:step`` grid specification."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"p-grid must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(part) for part in parts)
    except ValueError as exc:
        raise ConfigError(f"non-numeric p-grid {text!r}") from exc
    return start, stop, step


@dataclass(frozen=True)
class RunConfig:
    """Everything a figure run needs; tables take only a tolerance."""

    command: str = "figure"
    preset: str | None = None
    n_qubits: int = 8
    probes: tuple[str, ...] = ()
    hamiltonian: str = "linear"
    noises: tuple[str, ...] = ("phase_damping",)
    p_start: float = 0.0
    p_stop: float = 1.0
    p_step: float = 0.02
    axis_policy: str = "fixed"
    out: str | None = None
    fmt: str = "csv"
    threads: int = 1
    full_cap: int | None = None

    def __post_init__(self):
        if self.command != "figure":
            raise ConfigError(f"config files drive the figure command only, "
                              f"got {self.command!r}")
        if self.preset is not None and self.preset not in FIGURE_PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if self.n_qubits < 1:
            raise ConfigError(f"need at least one qubit, got {self.n_qubits}")
        if not (0.0 <= self.p_start <= self.p_stop <= 1.0):
            raise ConfigError(
                f"p-grid [{self.p_start}, {self.p_stop}] outside [0, 1]")
        if self.p_step <= 0.0 and self.p_stop > self.p_start:
            raise ConfigError(f"p-grid step must be positive, got {self.p_step}")
        if self.axis_policy not in ("fixed", "reopt"):
            raise ConfigError(f"axis policy must be fixed or reopt, "
                              f"got {self.axis_policy!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.threads < 1:
            raise ConfigError(f"thread count must be positive, got {self.threads}")
        if self.full_cap is not None and self.full_cap < 1:
            raise ConfigError(f"full-space cap must be positive, got {self.full_cap}")

    _JSON_KEYS = {
        "command": "command", "preset": "preset", "n": "n_qubits",
        "probes": "probes", "hamiltonian": "hamiltonian", "noises": "noises",
        "p_grid": None, "axis_policy": "axis_policy", "out": "out",
        "format": "fmt", "threads": "threads", "full_cap": "full_cap",
    }

    @classmethod
    def from_mapping(cls, data) -> "RunConfig":
        """Build a config from a JSON-style mapping; unknown keys rejected."""
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        unknown = sorted(set(data) - set(cls._JSON_KEYS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        kwargs = {}
        for key, attr in cls._JSON_KEYS.items():
            if key not in data or attr is None:
                continue
            value = data[key]
            if attr in ("probes", "noises"):
                if isinstance(value, str):
                    value = (value,)
                elif isinstance(value, list):
                    value = tuple(str(item) for item in value)
                else:
                    raise ConfigError(f"{key} must be a string or list of strings")
            kwargs[attr] = value
        if "p_grid" in data:
            grid = data["p_grid"]
            if isinstance(grid, str):
                start, stop, step = parse_p_grid(grid)
            elif isinstance(grid, list) and len(grid) == 3:
                start, stop, step = (float(v) for v in grid)
            else:
                raise ConfigError("p_grid must be 'start:stop:step' or [start, stop, step]")
            kwargs.update(p_start=start, p_stop=stop, p_step=step)
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def p_values(self) -> tuple[float, ...]:
        """The sweep grid; accumulated step error is clamped at the endpoint."""
        if self.p_stop <= self.p_start:
            return (self.p_start,)
        count = int(math.floor((self.p_stop - self.p_start) / self.p_step + 1e-9)) + 1
        return tuple(min(self.p_start + i * self.p_step, self.p_stop)
                     for i in range(count))


def parse_hamiltonian(text: str, n_qubits: int) -> HamiltonianSpec:
    """Parse ``linear``, ``r=1``..``r=4`` (or ``r1``..), ``power:k``."""
    text = text.strip().lower()
    if text == "linear":
        return HamiltonianSpec.linear(n_qubits)
    if text.startswith("r=") or (len(text) == 2 and text.startswith("r")):
        digits = text[2:] if text.startswith("r=") else text[1:]
        try:
            r = int(digits)
        except ValueError as exc:
            raise ConfigError(f"bad two-body form index in {text!r}") from exc
        if r not in TWO_BODY_RS:
            raise ConfigError(f"two-body form index must be in 1..4, got {r}")
        return HamiltonianSpec.two_body(r, n_qubits)
    if text.startswith("power:") or text.startswith("power"):
        digits = text.split(":", 1)[1] if ":" in text else text[len("power"):]
        try:
            k = int(digits)
        except ValueError as exc:
            raise ConfigError(f"bad power exponent in {text!r}") from exc
        if k < 1:
            raise ConfigError(f"power exponent must be positive, got {k}")
        return HamiltonianSpec.power(k, n_qubits)
    raise ConfigError(f"unknown hamiltonian {text!r} "
                      f"(expected linear, r=1..r=4 or power:k)")


def parse_probe(text: str, n_qubits: int,
                hspec: HamiltonianSpec) -> ProbeSpec:
    """Parse a probe token: ghz | wwbar | balanced | optimal | dicke:L |
    pair:L,L2 | coherent:POLAR,AZIMUTH (underscores also accepted)."""
    token = text.strip().lower().replace("_", ":", 1).replace("_", ",")
    name, _, args = token.partition(":")
    try:
        if name == "ghz":
            return ProbeSpec.ghz(n_qubits)
        if name == "wwbar":
            return ProbeSpec.wwbar(n_qubits)
        if name == "balanced":
            return ProbeSpec.balanced(n_qubits)
        if name == "optimal":
            return ProbeSpec.optimal_for(hspec)
        if name == "dicke":
            return ProbeSpec.dicke(n_qubits, int(args))
        if name == "pair":
            l, l2 = (int(part) for part in args.split(","))
            return ProbeSpec.superposition(n_qubits, l, l2)
        if name == "coherent":
            polar, azimuth = (float(part) for part in args.split(","))
            return ProbeSpec.spin_coherent(n_qubits, polar, azimuth)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad probe arguments in {text!r}") from exc
    raise ConfigError(f"unknown probe {text!r}")


def probe_label(spec: ProbeSpec) -> str:
    """Stable row label for a probe (no commas, safe for CSV grouping)."""
    if spec.kind == "dicke":
        return f"dicke_{spec.l}"
    if spec.kind == "superposition":
        return f"pair_{spec.l}_{spec.l2}"
    if spec.kind == "optimal":
        return f"optimal_{spec.hamiltonian.label()}"
    if spec.kind == "coherent":
        return "coherent"
    return spec.kind


# ---------------------------------------------------------------------------
# Result rows and serialization


@dataclass(frozen=True)
class ResultRow:
    """One (probe, Hamiltonian, noise, p) sample of the benchmark sweep.

    ``wall_time`` is runtime bookkeeping only and never serialized, so output
    files stay byte-identical across runs.
    """

    probe: str
    hamiltonian: str
    n_qubits: int
    noise: str
    p: float
    axis_theta: float
    axis_phi: float
    fq: float
    dtheta: float
    ref_snl: float
    ref_hl: float
    ref_nlsnl: float | None
    ref_nlhl: float | None
    wall_time: float = 0.0

    def __post_init__(self):
        if self.fq > 1e-12 and math.isfinite(self.dtheta):
            if abs(self.dtheta * math.sqrt(self.fq) - 1.0) > 1e-10:
                raise ValueError("sensitivity disagrees with 1/sqrt(fq)")

    def record(self) -> dict:
        return {
            "schema": SCHEMA_ID,
            "probe": self.probe,
            "hamiltonian": self.hamiltonian,
            "N": self.n_qubits,
            "noise": self.noise,
            "p": self.p,
            "axis_theta": self.axis_theta,
            "axis_phi": self.axis_phi,
            "fq": self.fq,
            "dtheta": self.dtheta,
            "ref_snl": self.ref_snl,
            "ref_hl": self.ref_hl,
            "ref_nlsnl": self.ref_nlsnl,
            "ref_nlhl": self.ref_nlhl,
        }


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if not math.isfinite(value):
            return ""
        return format(value, ".12g")
    return str(value)


def rows_to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(v) for v in row.record().values()])
    return buf.getvalue()


def rows_to_json(rows: list[ResultRow]) -> str:
    payload_rows = []
    for row in rows:
        record = row.record()
        del record["schema"]
        for key, value in record.items():
            if isinstance(value, float) and not math.isfinite(value):
                record[key] = None
        payload_rows.append(record)
    payload = {"schema": SCHEMA_ID, "rows": payload_rows}
    return json.dumps(payload, indent=2) + "\n"


def render_rows(rows: list[ResultRow], fmt: str) -> str:
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "json":
        return rows_to_json(rows)
    raise ConfigError(f"format must be csv or json, got {fmt!r}")


# ---------------------------------------------------------------------------
# Noise sweeps


@dataclass(frozen=True)
class SweepSeries:
    """A probe/Hamiltonian/channel curve to be swept over noise strengths."""

    probe_label: str
    probe: object            # SymVector
    hspec: HamiltonianSpec   # z-axis, symmetric basis
    axis: Direction          # encoding axis chosen at p = 0
    noise: str               # canonical channel kind, or "none"
    ref_nlsnl: float | None
    ref_nlhl: float | None


def optimal_qfi(hspec: HamiltonianSpec) -> float:
    """Spectral optimum (lam_max - lam_min)^2 of an encoding family."""
    if hspec.kind == "linear":
        return (hspec.mu * hspec.n_qubits) ** 2
    if hspec.kind == "two_body" and hspec.default_couplings():
        return closed_form_extrema(hspec.r, hspec.n_qubits).fq_optimal
    vals = build_hamiltonian(hspec).eigen.eigenvalues
    return float(vals[-1] - vals[0]) ** 2


def _nl_references(hspec: HamiltonianSpec, cache: dict) -> tuple[float | None, float | None]:
    """Nonlinear reference sensitivities; absent for the linear encoding."""
    if hspec.kind == "linear":
        return None, None
    key = (hspec.label(), hspec.n_qubits, hspec.mu, hspec.eta)
    if key not in cache:
        sep = separable_bound(hspec).value
        cache[key] = (sensitivity(sep), sensitivity(optimal_qfi(hspec)))
    return cache[key]


def noiseless_axis(probe, pspec: ProbeSpec | None,
                   hspec: HamiltonianSpec) -> tuple[Direction, float]:
    """Encoding axis maximizing the noiseless QFI, with the value attained."""
    if hspec.kind == "linear":
        return qfi_linear_covariance(probe)
    if pspec is not None and pspec.kind == "optimal":
        # The optimal probe attains the spectral bound along z; no rotated
        # spectrum can exceed it, so the z axis is a global optimum.
        return Z_AXIS, qfi_pure(probe, build_hamiltonian(hspec)).value
    axis, result = optimize_axis(probe, hspec)
    return axis, result.value


def make_series(pspec: ProbeSpec, hspec: HamiltonianSpec, noise: str,
                cache: dict | None = None, label: str | None = None,
                axis: Direction | None = None) -> SweepSeries:
    """Resolve a probe/channel combination into a sweep-ready series."""
    cache = cache if cache is not None else {}
    noise = noise if noise == "none" else canonical_kind(noise)
    probe = build_probe(pspec)
    if axis is None:
        axis, _ = noiseless_axis(probe, pspec, hspec)
    nlsnl, nlhl = _nl_references(hspec, cache)
    return SweepSeries(probe_label=label or probe_label(pspec), probe=probe,
                       hspec=hspec, axis=axis, noise=noise,
                       ref_nlsnl=nlsnl, ref_nlhl=nlhl)


def _mixed_qfi_from_spectrum(lam: np.ndarray, vecs: np.ndarray,
                             hmat: np.ndarray) -> float:
    h_eig = vecs.conj().T @ hmat @ vecs
    s = lam[:, None] + lam[None, :]
    d = lam[:, None] - lam[None, :]
    mask = s > EIGENVALUE_CUTOFF
    return max(2.0 * float(np.sum((d[mask] ** 2 / s[mask]) * np.abs(h_eig[mask]) ** 2)), 0.0)


def _reoptimize_axis(rho, hspec: HamiltonianSpec, start: Direction,
                     cap: int | None,
                     config: AxisSearchConfig) -> tuple[Direction, float]:
    """Pattern-search the encoding axis on a noisy state, from the p=0 optimum."""
    ed = hermitian_eigen(rho.matrix)

    def value(theta: float, phi: float) -> float:
        spec = hspec.with_axis(Direction(theta, phi % TWO_PI)).with_basis("full")
        return _mixed_qfi_from_spectrum(ed.eigenvalues, ed.eigenvectors,
                                        build_hamiltonian(spec, cap).matrix)

    theta, phi, best = _pattern_search(
        value, start.polar, start.azimuth, value(start.polar, start.azimuth),
        math.pi / 32.0, math.pi / 32.0,
        config.refine_step_tol, config.max_refine_iters)
    return Direction(theta, phi % TWO_PI), best


def sweep_rows(series: list[SweepSeries], p_values: tuple[float, ...],
               threads: int = 1, axis_policy: str = "fixed",
               cap: int | None = None,
               refine: AxisSearchConfig = AxisSearchConfig()) -> list[ResultRow]:
    """Evaluate every (series, p) sample; rows are ordered series-major.

    A series with noise "none" contributes a single p = 0 row.  Worker-pool
    results are assembled by task index, so the row order and content are
    independent of the thread count.
    """
    prepared = []
    for s in series:
        rho0 = density_from_pure(embed_full(s.probe, cap))
        hfull = build_hamiltonian(s.hspec.with_axis(s.axis).with_basis("full"), cap)
        grid = (0.0,) if s.noise == "none" else p_values
        prepared.append((s, rho0, hfull, grid))
    tasks = [(s, rho0, hfull, p)
             for (s, rho0, hfull, grid) in prepared for p in grid]

    def run_one(task) -> ResultRow:
        s, rho0, hfull, p = task
        t0 = time.perf_counter()
        rho = rho0 if s.noise == "none" else apply_noise(rho0, NoiseSpec(s.noise, p))
        axis = s.axis
        if axis_policy == "reopt" and s.noise != "none" and p > 0.0:
            axis, fq = _reoptimize_axis(rho, s.hspec, axis, cap, refine)
            dtheta = sensitivity(fq)
        else:
            result = qfi_mixed(rho, hfull)
            fq, dtheta = result.value, result.sensitivity
        n = s.hspec.n_qubits
        return ResultRow(
            probe=s.probe_label, hamiltonian=s.hspec.label(), n_qubits=n,
            noise=s.noise, p=p, axis_theta=axis.polar, axis_phi=axis.azimuth,
            fq=fq, dtheta=dtheta,
            ref_snl=1.0 / math.sqrt(n), ref_hl=1.0 / n,
            ref_nlsnl=s.ref_nlsnl, ref_nlhl=s.ref_nlhl,
            wall_time=time.perf_counter() - t0)

    if threads == 1:
        return [run_one(task) for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run_one, tasks))


# ---------------------------------------------------------------------------
# Figure presets


def near_optimal_pair(n_qubits: int) -> tuple[int, int]:
    """The closed-form near-optimal level pair for the linear encoding."""
    if n_qubits % 2 == 1:
        return (n_qubits - 3) // 2, (n_qubits + 1) // 2
    return (n_qubits - 2) // 2, (n_qubits + 2) // 2


def fig1_probe_specs(n_qubits: int) -> list[tuple[str, ProbeSpec]]:
    """The four benchmark families plotted against N (balanced: even N only)."""
    la, lb = near_optimal_pair(n_qubits)
    specs = [("near_optimal_pair", ProbeSpec.superposition(n_qubits, la, lb)),
             ("wwbar", ProbeSpec.wwbar(n_qubits))]
    if n_qubits % 2 == 0:
        specs.append(("balanced", ProbeSpec.balanced(n_qubits)))
    specs.append(("ghz", ProbeSpec.ghz(n_qubits)))
    return specs


FIG1_N_RANGE = tuple(range(3, 25))


def _fig1_rows(config: RunConfig) -> list[ResultRow]:
    rows = []
    for n in FIG1_N_RANGE:
        for label, pspec in fig1_probe_specs(n):
            t0 = time.perf_counter()
            axis, fq = qfi_linear_covariance(build_probe(pspec))
            rows.append(ResultRow(
                probe=label, hamiltonian="linear", n_qubits=n,
                noise="none", p=0.0,
                axis_theta=axis.polar, axis_phi=axis.azimuth,
                fq=fq, dtheta=sensitivity(fq),
                ref_snl=1.0 / math.sqrt(n), ref_hl=1.0 / n,
                ref_nlsnl=None, ref_nlhl=None,
                wall_time=time.perf_counter() - t0))
    return rows


def preset_series(name: str, config: RunConfig | None = None) -> list[SweepSeries]:
    """The sweep series of a figure preset (fig1 sweeps N, not p)."""
    if name == "fig1":
        raise ConfigError("fig1 is a noiseless N-sweep with no noise series")
    if name not in FIGURE_PRESETS:
        raise ConfigError(f"unknown preset {name!r}")
    cache: dict = {}
    n = 8
    series = []
    if name in ("fig2", "fig3"):
        hspec = HamiltonianSpec.linear(n)
        la, lb = near_optimal_pair(n)
        probes = [(f"pair_{la}_{lb}", ProbeSpec.superposition(n, la, lb)),
                  ("ghz", ProbeSpec.ghz(n)),
                  ("wwbar", ProbeSpec.wwbar(n)),
                  ("balanced", ProbeSpec.balanced(n))]
        for label, pspec in probes:
            for noise in ALL_NOISES:
                series.append(make_series(pspec, hspec, noise, cache, label))
    elif name == "fig4":
        hspec = HamiltonianSpec.two_body(2, n)
        pspec = ProbeSpec.optimal_for(hspec)
        for noise in ALL_NOISES:
            series.append(make_series(pspec, hspec, noise, cache))
    elif name == "fig5":
        hspec = HamiltonianSpec.two_body(1, n)
        best = near_optimal_scan(n, hspec)[0]
        series.append(make_series(ProbeSpec.optimal_for(hspec), hspec,
                                  "global_depolarizing", cache))
        series.append(make_series(
            ProbeSpec.superposition(n, best.l, best.l2), hspec,
            "global_depolarizing", cache, axis=best.axis))
    else:  # fig6 / fig7
        for r in TWO_BODY_RS:
            hspec = HamiltonianSpec.two_body(r, n)
            best = near_optimal_scan(n, hspec)[0]
            series.append(make_series(ProbeSpec.optimal_for(hspec), hspec,
                                      "phase_damping", cache))
            series.append(make_series(
                ProbeSpec.superposition(n, best.l, best.l2), hspec,
                "phase_damping", cache, axis=best.axis))
    return series


def _custom_series(config: RunConfig) -> list[SweepSeries]:
    if not config.probes:
        raise ConfigError("figure run needs at least one probe "
                          "(--probe or config 'probes')")
    n = config.n_qubits
    hspec = parse_hamiltonian(config.hamiltonian, n)
    cache: dict = {}
    series = []
    for text in config.probes:
        pspec = parse_probe(text, n, hspec)
        for noise in config.noises:
            series.append(make_series(pspec, hspec, noise, cache))
    return series


def rows_for_config(config: RunConfig) -> list[ResultRow]:
    """All rows of a figure run (preset or custom)."""
    if config.preset == "fig1":
        return _fig1_rows(config)
    if config.preset is not None:
        series = preset_series(config.preset, config)
    else:
        series = _custom_series(config)
    return sweep_rows(series, config.p_values(), threads=config.threads,
                      axis_policy=config.axis_policy, cap=config.full_cap)


# ---------------------------------------------------------------------------
# Tables


def pair_matches(n_qubits: int, found: tuple[int, int],
                 reference: tuple[int, int]) -> bool:
    """Pair equality up to the spin flip (l, l2) -> (N - l2, N - l)."""
    flipped = (n_qubits - reference[1], n_qubits - reference[0])
    return found in (reference, flipped)


def superposition_closed_form(n_qubits: int) -> float:
    """Reported closed-form QFI of the near-optimal pair under linear encoding."""
    if n_qubits % 2 == 1:
        return 8.4641 + 0.75 * (n_qubits - 3) * (n_qubits + 5)
    return 4.0 + 0.75 * (n_qubits - 2) * (n_qubits + 4)


@dataclass(frozen=True)
class TableReport:
    """A formatted benchmark table with an overall verdict."""

    title: str
    lines: tuple[str, ...]
    ok: bool

    def text(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return "\n".join((self.title, *self.lines, f"result: {verdict}")) + "\n"


@dataclass(frozen=True)
class Table1Entry:
    n_qubits: int
    l: int
    l2: int
    qfi: float
    reference_pair: tuple[int, int]
    reference_qfi: float
    value_ok: bool
    pair_ok: bool

    @property
    def ok(self) -> bool:
        return self.value_ok and self.pair_ok


def table1_entries(tolerance: float = 0.05) -> list[Table1Entry]:
    """Best near-optimal pair per N for the linear encoding, with verdicts."""
    entries = []
    for n, (ref_pair, ref_qfi) in sorted(TABLE1_REFERENCE.items()):
        top = near_optimal_scan(n, HamiltonianSpec.linear(n))[0]
        entries.append(Table1Entry(
            n_qubits=n, l=top.l, l2=top.l2, qfi=top.qfi,
            reference_pair=ref_pair, reference_qfi=ref_qfi,
            value_ok=abs(top.qfi - ref_qfi) <= tolerance,
            pair_ok=pair_matches(n, (top.l, top.l2), ref_pair)))
    return entries


def cmd_table1(tolerance: float = 0.05) -> TableReport:
    entries = table1_entries(tolerance)
    lines = [f"{'N':>2}  {'pair':>7}  {'F_Q':>9}  {'reference':>16}  verdict"]
    for e in entries:
        status = "PASS" if e.ok else "FAIL"
        ref = f"{e.reference_qfi:g} {e.reference_pair}"
        lines.append(f"{e.n_qubits:>2}  ({e.l},{e.l2:>2})  {e.qfi:>9.4f}  "
                     f"{ref:>16}  {status}")
    return TableReport(
        title=f"near-optimal Dicke pairs, linear encoding (tolerance {tolerance:g})",
        lines=tuple(lines), ok=all(e.ok for e in entries))


@dataclass(frozen=True)
class Table2Entry:
    r: int
    n_qubits: int
    lambda_max: float
    lambda_min: float
    lambda_max_numeric: float
    lambda_min_numeric: float
    fq_closed: float
    extrema_ok: bool
    fq_consistent: bool
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.extrema_ok and self.fq_consistent


def table2_entries(n_lo: int = 2, n_hi: int = 12) -> list[Table2Entry]:
    """Closed-form versus numeric spectral extremes of the two-body forms."""
    entries = []
    for r in TWO_BODY_RS:
        for n in range(n_lo, n_hi + 1):
            summary = closed_form_extrema(r, n)
            vals = build_hamiltonian(HamiltonianSpec.two_body(r, n)).eigen.eigenvalues
            nmax, nmin = float(vals[-1]), float(vals[0])
            extrema_ok = (abs(summary.lambda_max - nmax) <= 1e-9
                          and abs(summary.lambda_min - nmin) <= 1e-9)
            fq_consistent = (summary.fq_optimal
                             == (summary.lambda_max - summary.lambda_min) ** 2)
            note = ""
            if r == 4 and n == 8:
                note = ("closed form 156.25; benchmark tables report the "
                        "near-optimal pair value 144 (documented discrepancy)")
            entries.append(Table2Entry(
                r=r, n_qubits=n,
                lambda_max=summary.lambda_max, lambda_min=summary.lambda_min,
                lambda_max_numeric=nmax, lambda_min_numeric=nmin,
                fq_closed=summary.fq_optimal,
                extrema_ok=extrema_ok, fq_consistent=fq_consistent, note=note))
    return entries


def cmd_table2(n_lo: int = 2, n_hi: int = 12) -> TableReport:
    entries = table2_entries(n_lo, n_hi)
    lines = [f"{'r':>2} {'N':>3}  {'lam_max':>10}  {'lam_min':>10}  "
             f"{'F_Q':>12}  verdict"]
    notes = []
    for e in entries:
        status = "PASS" if e.ok else "FAIL"
        flag = " [see note]" if e.note else ""
        lines.append(f"{e.r:>2} {e.n_qubits:>3}  {e.lambda_max:>10.6g}  "
                     f"{e.lambda_min:>10.6g}  {e.fq_closed:>12.6g}  {status}{flag}")
        if e.note:
            notes.append(f"note (r={e.r}, N={e.n_qubits}): {e.note}")
    return TableReport(
        title="two-body spectral extremes, closed form vs numeric (tolerance 1e-9)",
        lines=tuple(lines + notes), ok=all(e.ok for e in entries))


@dataclass(frozen=True)
class Table3Entry:
    r: int
    separable: float
    probe_qfi: float
    nl_snl: float
    nl_hl: float
    reference: tuple[float, float, float, float]
    separable_ok: bool
    probe_ok: bool
    sens_ok: bool
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.separable_ok and self.probe_ok and self.sens_ok


def table3_entries() -> list[Table3Entry]:
    """Nonlinear benchmarks at N=8: separable bound, probe QFI, sensitivities."""
    n = 8
    entries = []
    for r in TWO_BODY_RS:
        hspec = HamiltonianSpec.two_body(r, n)
        sep = separable_bound(hspec).value
        note = ""
        if r == 4:
            probe_fq = near_optimal_scan(n, hspec)[0].qfi
            closed = closed_form_extrema(r, n).fq_optimal
            note = (f"probe column is the near-optimal pair value; the "
                    f"closed-form optimum is {closed:g} (documented discrepancy)")
        else:
            probe = build_probe(ProbeSpec.optimal_for(hspec))
            probe_fq = qfi_pure(probe, build_hamiltonian(hspec)).value
        nl_snl = sensitivity(sep)
        nl_hl = sensitivity(probe_fq)
        ref = TABLE3_REFERENCE[r]
        entries.append(Table3Entry(
            r=r, separable=sep, probe_qfi=probe_fq, nl_snl=nl_snl, nl_hl=nl_hl,
            reference=ref,
            separable_ok=abs(sep - ref[0]) <= 0.005 * ref[0],
            probe_ok=abs(probe_fq - ref[1]) <= 1e-6,
            sens_ok=(abs(nl_snl - ref[2]) <= 0.002
                     and abs(nl_hl - ref[3]) <= 0.002),
            note=note))
    return entries


def cmd_table3() -> TableReport:
    entries = table3_entries()
    lines = [f"{'r':>2}  {'separable':>10}  {'probe F_Q':>10}  "
             f"{'NL-SNL':>7}  {'NL-HL':>7}  verdict"]
    notes = []
    for e in entries:
        status = "PASS" if e.ok else "FAIL"
        flag = " [see note]" if e.note else ""
        lines.append(f"{e.r:>2}  {e.separable:>10.4f}  {e.probe_qfi:>10.4f}  "
                     f"{e.nl_snl:>7.4f}  {e.nl_hl:>7.4f}  {status}{flag}")
        if e.note:
            notes.append(f"note (r={e.r}): {e.note}")
    return TableReport(
        title="nonlinear benchmarks at N=8 "
              "(separable 0.5% rel, probe 1e-6, sensitivities 0.002)",
        lines=tuple(lines + notes), ok=all(e.ok for e in entries))


@dataclass(frozen=True)
class Table4Entry:
    n_qubits: int
    r: int
    l: int
    l2: int
    qfi: float
    reference_pair: tuple[int, int]
    reference_qfi: float
    value_ok: bool
    pair_ok: bool

    @property
    def ok(self) -> bool:
        return self.value_ok and self.pair_ok


def table4_entries(tolerance: float = 0.01) -> list[Table4Entry]:
    """Best near-optimal pair per (N, r) for the two-body forms."""
    entries = []
    for (n, r), (ref_pair, ref_qfi) in sorted(TABLE4_REFERENCE.items()):
        top = near_optimal_scan(n, HamiltonianSpec.two_body(r, n))[0]
        entries.append(Table4Entry(
            n_qubits=n, r=r, l=top.l, l2=top.l2, qfi=top.qfi,
            reference_pair=ref_pair, reference_qfi=ref_qfi,
            value_ok=abs(top.qfi - ref_qfi) <= tolerance * ref_qfi,
            pair_ok=pair_matches(n, (top.l, top.l2), ref_pair)))
    return entries


def cmd_table4(tolerance: float = 0.01) -> TableReport:
    entries = table4_entries(tolerance)
    lines = [f"{'N':>2} {'r':>2}  {'pair':>6}  {'F_Q':>9}  "
             f"{'reference':>15}  verdict"]
    for e in entries:
        status = "PASS" if e.ok else "FAIL"
        ref = f"{e.reference_qfi:g} {e.reference_pair}"
        lines.append(f"{e.n_qubits:>2} {e.r:>2}  ({e.l},{e.l2})  {e.qfi:>9.4f}  "
                     f"{ref:>15}  {status}")
    return TableReport(
        title=f"near-optimal Dicke pairs, two-body encodings "
              f"(tolerance {tolerance:g} relative)",
        lines=tuple(lines), ok=all(e.ok for e in entries))
