"""Area-weighted colored Motzkin spin chain.

The heavy lifting is in the compiled ``_motzkin`` extension; this package only
re-exports it.
"""

from ._motzkin import (
    ChainSpec,
    ConvergenceError,
    SchmidtProfile,
    SpectrumReport,
    build_hamiltonian,
    diagonalize_low,
    entanglement_entropy,
    entropy_bound_c,
    entropy_curve,
    fit,
    ground_state,
    ground_state_profile,
    ground_state_vector,
    peak_offset_n0,
    profile,
    residual,
    schmidt_by_svd,
    sweep_csv,
    tail_start_m0,
)

__all__ = [
    "ChainSpec",
    "ConvergenceError",
    "SchmidtProfile",
    "SpectrumReport",
    "build_hamiltonian",
    "diagonalize_low",
    "entanglement_entropy",
    "entropy_bound_c",
    "entropy_curve",
    "fit",
    "ground_state",
    "ground_state_profile",
    "ground_state_vector",
    "peak_offset_n0",
    "profile",
    "residual",
    "schmidt_by_svd",
    "sweep_csv",
    "tail_start_m0",
]

__version__ = "0.1.0"
