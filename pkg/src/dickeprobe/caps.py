"""Size guards for full 2^N qubit-space objects."""

from __future__ import annotations

DEFAULT_FULL_CAP = 12


class CapacityError(RuntimeError):
    """Raised when a full-space object would exceed the configured qubit cap."""


def check_full_capacity(n_qubits: int, cap: int | None = None) -> None:
    limit = DEFAULT_FULL_CAP if cap is None else cap
    if n_qubits > limit:
        raise CapacityError(
            f"full 2^N space requested for N={n_qubits}, exceeds cap {limit} "
            f"(raise the cap explicitly to allow this)"
        )
