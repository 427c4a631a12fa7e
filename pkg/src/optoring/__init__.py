"""Stationary Gaussian entanglement of a ring-cavity optomechanical system."""

from .gaussian_cv import (
    ResidualContangle,
    check_physical,
    log_negativity,
    partial_transpose,
    reduce,
    residual_contangle,
    symplectic_eigenvalues,
    symplectic_form,
    two_mode_logneg_invariant,
)
from .numerics import Stability, eig_complex, is_hurwitz, solve_linear, solve_lyapunov
from .ring_model import (
    DerivedParams,
    EntanglementReport,
    PhysicalParams,
    UnstableSystemError,
    build_drift,
    build_noise,
    default_params,
    derive_params,
    effective_detuning_roots,
    entanglement_report,
    steady_covariance,
    steady_state_positions,
    thermal_occupancy,
)
from .sweep import SweepSpec, figure_preset, run_sweep, write_sweep_csv

__all__ = [
    "DerivedParams",
    "EntanglementReport",
    "PhysicalParams",
    "ResidualContangle",
    "Stability",
    "SweepSpec",
    "UnstableSystemError",
    "build_drift",
    "build_noise",
    "check_physical",
    "default_params",
    "derive_params",
    "effective_detuning_roots",
    "eig_complex",
    "entanglement_report",
    "figure_preset",
    "is_hurwitz",
    "log_negativity",
    "partial_transpose",
    "reduce",
    "residual_contangle",
    "run_sweep",
    "solve_linear",
    "solve_lyapunov",
    "steady_covariance",
    "steady_state_positions",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_occupancy",
    "two_mode_logneg_invariant",
    "write_sweep_csv",
]

__version__ = "0.1.0"
