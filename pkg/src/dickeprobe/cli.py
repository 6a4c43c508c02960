"""Command-line entry point: benchmark tables, figure data, verification.

Exit codes: 0 success, 1 a table or verification check failed, 2 invalid
configuration or input, 3 full-space capacity exceeded.
"""

import os

# Pin the numerical thread pools before numpy loads so reduction order (and
# therefore every output byte) does not depend on the host's core count.
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS",
             "NUMEXPR_NUM_THREADS"):
    os.environ.setdefault(_var, "1")

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import acceptance, bench
from .bench import ConfigError, RunConfig
from .caps import CapacityError
from .linalg import LinalgError
from .noise import NoiseError
from .operators import OperatorError
from .optimize import OptimizeError
from .qfi import QfiError
from .states import StateError, build_probe, m_value

_USER_ERRORS = (ConfigError, NoiseError, OperatorError, OptimizeError,
                QfiError, StateError, LinalgError, OSError)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dickeprobe",
        description="Collective-spin probe benchmarks: QFI tables, "
                    "noise-sweep figure data, and self-verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    table_help = {
        "table1": "near-optimal Dicke pairs under the linear encoding",
        "table2": "closed-form vs numeric spectral extrema of h(M)",
        "table3": "separable bounds, optimal probes and sensitivities",
        "table4": "near-optimal pairs for the two-body encodings",
    }
    for name, help_text in table_help.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--out", metavar="PATH",
                         help="write the report to PATH instead of stdout")
        if name == "table1":
            cmd.add_argument("--tolerance", type=float, default=0.05,
                             metavar="ABS", help="absolute QFI tolerance "
                             "(default 0.05)")
        elif name == "table2":
            cmd.add_argument("--n", default="2:12", metavar="LO:HI",
                             help="qubit-number range (default 2:12)")
        elif name == "table4":
            cmd.add_argument("--tolerance", type=float, default=0.01,
                             metavar="REL", help="relative QFI tolerance "
                             "(default 0.01)")

    fig = sub.add_parser(
        "figure", help="emit CSV/JSON sweep data for the benchmark figures")
    fig.add_argument("--preset", choices=bench.FIGURE_PRESETS,
                     help="one of the packaged figure configurations")
    fig.add_argument("--config", metavar="PATH",
                     help="JSON run configuration file")
    fig.add_argument("--n", type=int, metavar="N", help="number of qubits")
    fig.add_argument("--probe", action="append", metavar="SPEC",
                     help="probe spec (ghz, wwbar, balanced, optimal, "
                     "dicke:L, pair:L,L2, coherent:THETA,PHI); repeatable")
    fig.add_argument("--hamiltonian", metavar="SPEC",
                     help="encoding (linear, r=1..r=4, power:K); "
                     "default linear")
    fig.add_argument("--noise", action="append", metavar="KIND",
                     help="noise channel (phase_damping, amplitude_damping, "
                     "global_depolarizing, none); repeatable")
    fig.add_argument("--p-grid", dest="p_grid", metavar="A:B:STEP",
                     help="noise-strength grid (default 0:1:0.02)")
    fig.add_argument("--axis-policy", dest="axis_policy",
                     choices=("fixed", "reopt"),
                     help="keep the noiseless axis or re-optimize per point")
    fig.add_argument("--out", metavar="PATH",
                     help="write the series to PATH instead of stdout")
    fig.add_argument("--format", dest="fmt", choices=("csv", "json"),
                     help="output format (default csv)")
    fig.add_argument("--threads", type=int, metavar="K",
                     help="worker threads for the sweep (default 1)")
    fig.add_argument("--full-cap", dest="full_cap", type=int, metavar="N",
                     help="raise the 2^N full-space safety cap")

    ver = sub.add_parser("verify", help="run the self-verification checks")
    ver.add_argument("--only", metavar="NAMES",
                     help="comma-separated subset of checks "
                     f"({', '.join(acceptance.CHECK_NAMES)})")
    ver.add_argument("--tolerance", type=float, metavar="TOL",
                     help="override the table tolerances (tightening is "
                     "expected to produce failures)")

    dump = sub.add_parser("dump-state",
                          help="print the amplitudes of a probe state")
    dump.add_argument("--n", type=int, required=True, metavar="N",
                      help="number of qubits")
    dump.add_argument("--probe", required=True, metavar="SPEC",
                      help="probe spec (same grammar as figure --probe)")
    dump.add_argument("--hamiltonian", default="linear", metavar="SPEC",
                      help="encoding used to resolve 'optimal' probes")
    dump.add_argument("--format", dest="fmt", choices=("csv", "json"),
                      default="csv")
    dump.add_argument("--out", metavar="PATH")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        path = Path(out)
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")


def _parse_n_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError(text)
    except ValueError:
        raise ConfigError(f"expected N or LO:HI, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise ConfigError(f"invalid qubit range {text!r}")
    return lo, hi


def _run_table(args: argparse.Namespace) -> int:
    if args.command == "table1":
        report = bench.cmd_table1(args.tolerance)
    elif args.command == "table2":
        lo, hi = _parse_n_range(args.n)
        report = bench.cmd_table2(lo, hi)
    elif args.command == "table3":
        report = bench.cmd_table3()
    else:
        report = bench.cmd_table4(args.tolerance)
    _emit(report.text(), args.out)
    return 0 if report.ok else 1


def _figure_config(args: argparse.Namespace) -> RunConfig:
    custom_flags = {"--n": args.n, "--probe": args.probe,
                    "--hamiltonian": args.hamiltonian, "--noise": args.noise}
    used_custom = sorted(name for name, value in custom_flags.items()
                         if value is not None)
    if args.config is not None:
        if args.preset is not None:
            raise ConfigError("--preset and --config are mutually exclusive")
        if used_custom:
            raise ConfigError(
                f"--config conflicts with {', '.join(used_custom)}")
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config {args.config}: expected a JSON object")
        config = RunConfig.from_mapping(data)
    elif args.preset is not None:
        if used_custom:
            raise ConfigError(
                f"--preset conflicts with {', '.join(used_custom)}; presets "
                f"fix their own probes and encoding")
        config = RunConfig(preset=args.preset)
    else:
        config = RunConfig(
            n_qubits=args.n if args.n is not None else 8,
            probes=tuple(args.probe or ()),
            hamiltonian=args.hamiltonian or "linear",
            noises=tuple(args.noise or ("phase_damping",)))
    overrides = {}
    if args.p_grid is not None:
        start, stop, step = bench.parse_p_grid(args.p_grid)
        overrides.update(p_start=start, p_stop=stop, p_step=step)
    if args.axis_policy is not None:
        overrides["axis_policy"] = args.axis_policy
    if args.out is not None:
        overrides["out"] = args.out
    if args.fmt is not None:
        overrides["fmt"] = args.fmt
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.full_cap is not None:
        overrides["full_cap"] = args.full_cap
    return dataclasses.replace(config, **overrides) if overrides else config


def _run_figure(args: argparse.Namespace) -> int:
    config = _figure_config(args)
    rows = bench.rows_for_config(config)
    _emit(bench.render_rows(rows, config.fmt), config.out)
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    only = None
    if args.only:
        only = tuple(part.strip() for part in args.only.split(",")
                     if part.strip())
    results = acceptance.run_all(only=only, tolerance=args.tolerance)
    for result in results:
        print(f"[{'PASS' if result.ok else 'FAIL'}] {result.name}: "
              f"{result.summary}")
        if not result.ok:
            for line in result.details:
                print(f"    {line}")
    passed = sum(result.ok for result in results)
    print(f"summary: {passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def _run_dump_state(args: argparse.Namespace) -> int:
    hspec = bench.parse_hamiltonian(args.hamiltonian, args.n)
    pspec = bench.parse_probe(args.probe, args.n, hspec)
    state = build_probe(pspec)
    label = bench.probe_label(pspec)
    if args.fmt == "csv":
        lines = ["l,M,amp_re,amp_im"]
        for l, amp in enumerate(state.amplitudes):
            lines.append(f"{l},{m_value(args.n, l):.12g},"
                         f"{amp.real:.12g},{amp.imag:.12g}")
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "schema": "dickeprobe-state-v1",
            "N": args.n,
            "probe": label,
            "amplitudes": [
                {"l": l, "M": m_value(args.n, l),
                 "re": amp.real, "im": amp.imag}
                for l, amp in enumerate(state.amplitudes)
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("table1", "table2", "table3", "table4"):
            return _run_table(args)
        if args.command == "figure":
            return _run_figure(args)
        if args.command == "verify":
            return _run_verify(args)
        return _run_dump_state(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
