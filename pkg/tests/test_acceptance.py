"""End-to-end verification of the published benchmark behavior.

Each test evaluates one self-verification check from
``dickeprobe.acceptance`` and emits a single ``[PASS]``/``[FAIL]`` line
straight to the terminal, so a full run reads as a checklist.

The full amplitude-damping expectation is marked as an expected failure:
total damping maps every probe to the ground state, which still senses
rotations about transverse axes (F = N), so probes read out along x retain
information.  The zero-information outcome holds only for z-axis readouts,
and the per-probe verdicts are reported honestly instead of being skipped.
"""

import functools

import pytest

from dickeprobe import acceptance


@functools.lru_cache(maxsize=None)
def _noise_check():
    return acceptance.check_noise()


@pytest.fixture
def report(capsys):
    def emit(name, ok, summary):
        with capsys.disabled():
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {summary}")
    return emit


def test_near_optimal_pairs_linear_encoding(report):
    result = acceptance.check_table1()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_pair_qfi_closed_forms(report):
    result = acceptance.check_closed_forms()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_two_body_spectral_extrema(report):
    result = acceptance.check_table2()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_nonlinear_benchmarks(report):
    result = acceptance.check_table3()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_two_body_near_optimal_pairs(report):
    result = acceptance.check_table4()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_known_state_qfi_closed_forms(report):
    result = acceptance.check_known_states()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_noise_properties_except_full_damping(report):
    result = _noise_check()
    parts = dict(part.rsplit(" ", 1) for part in result.summary.split(", "))
    subset = {name: verdict for name, verdict in parts.items()
              if name != "full amplitude damping"}
    subset_ok = all(verdict == "PASS" for verdict in subset.values())
    damped = [d for d in result.details if d.startswith("(c) fig")]
    z_axis = [d for d in damped
              if "ghz" in d or "wwbar" in d or "optimal" in d]
    z_ok = bool(z_axis) and all(d.endswith("PASS") for d in z_axis)
    ok = subset_ok and z_ok
    report("noise_properties", ok,
           "endpoints, depolarizing convexity, dephasing oracle, CFI bound, "
           "and z-axis full damping all hold")
    assert ok, "\n".join(result.details)


@pytest.mark.xfail(
    strict=True,
    reason="total amplitude damping leaves the ground state, which still "
           "senses transverse rotations (F = N); only z-axis readouts lose "
           "all phase information")
def test_full_amplitude_damping_erases_every_probe(report):
    result = _noise_check()
    damped = [d for d in result.details if d.startswith("(c) fig")]
    ok = bool(damped) and all(d.endswith("PASS") for d in damped)
    report("full_amplitude_damping", ok,
           "F(p=1) < 1e-8 for every preset probe")
    assert ok, "\n".join(damped)


def test_method_crosschecks(report):
    result = acceptance.check_crosschecks()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)


def test_byte_determinism(report):
    result = acceptance.check_determinism()
    report(result.name, result.ok, result.summary)
    assert result.ok, "\n".join(result.details)
