"""Quantum Fisher information benchmarks for collective-spin probe states.

Submodules
----------
linalg
    Eigendecomposition helpers, including a cyclic-Jacobi cross-check solver.
states
    Symmetric-sector probe states (Dicke levels, pair superpositions, GHZ,
    spin-coherent) and their embedding into the full 2^N space.
operators
    Collective spin components and diagonal two-body phase encodings h(M),
    with closed-form spectral extrema.
qfi
    Pure- and mixed-state quantum Fisher information, SLD, and the classical
    Fisher information of a POVM.
noise
    Local phase-damping / amplitude-damping Kraus channels and global
    depolarizing, applied to the probe before encoding.
optimize
    Rotation-axis optimization, the covariance shortcut for linear encodings,
    separable bounds, and the near-optimal Dicke-pair scan.
bench
    Benchmark tables, figure sweep configurations, and CSV/JSON serialization.
acceptance
    Self-verification checks behind ``dickeprobe verify``.
"""

__version__ = "0.1.0"
