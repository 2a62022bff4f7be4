"""Quantum Wasserstein distances and divergences."""

from ._qwass import (
    DimensionBudgetError,
    Error,
    InvalidArgument,
    NumericalError,
    ParseError,
    SolverError,
    cost_symm,
    cost_z,
    d_symm_commuting,
    d_z_commuting,
    d_z_xy,
    distance,
    divergence,
    divergence_z_commuting,
    divergence_z_xy,
    gap_demo,
    solve_instance,
    state_from_bloch,
    verify,
    verify_suites,
)

__all__ = [
    "DimensionBudgetError",
    "Error",
    "InvalidArgument",
    "NumericalError",
    "ParseError",
    "SolverError",
    "cost_symm",
    "cost_z",
    "d_symm_commuting",
    "d_z_commuting",
    "d_z_xy",
    "distance",
    "divergence",
    "divergence_z_commuting",
    "divergence_z_xy",
    "gap_demo",
    "solve_instance",
    "state_from_bloch",
    "verify",
    "verify_suites",
]
