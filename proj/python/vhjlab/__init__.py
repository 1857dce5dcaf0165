"""Finite-difference laboratory for a viscous Hamilton-Jacobi equation with
p-Laplacian diffusion and generalized Dirichlet boundary data."""

from ._core import (
    ConfigError,
    Grid,
    SolverError,
    asymptotic_slope,
    auto_constants,
    beta_exponent,
    disc_grid,
    ergodic_solve,
    holder_seminorm,
    interval_grid,
    solve_parabolic,
    solve_state_constraint,
    solve_stationary,
    sup_convolve,
)

__all__ = [
    "ConfigError",
    "Grid",
    "SolverError",
    "asymptotic_slope",
    "auto_constants",
    "beta_exponent",
    "disc_grid",
    "ergodic_solve",
    "holder_seminorm",
    "interval_grid",
    "solve_parabolic",
    "solve_state_constraint",
    "solve_stationary",
    "sup_convolve",
]

__version__ = "1.0.0"
