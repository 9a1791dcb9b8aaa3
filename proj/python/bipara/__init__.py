"""Finite-resolution bi-parameter dyadic analysis.

Thin wrapper over the compiled core. Grids are square nested lists of
floats with power-of-two side; coefficient fields are lists of
(jx, kx, jy, ky, c) tuples.
"""

from bipara._core import (
    analyze,
    bmo_lower,
    dot_hardy_norm,
    dyadic_maximal,
    hardy_norm,
    holder_upper_bound,
    lower_bound_estimate,
    max_resolution,
    paraproduct,
    paraproduct_adjoint,
    run_cli,
    square_function,
    synthesize,
    version,
)

__all__ = [
    "analyze",
    "bmo_lower",
    "dot_hardy_norm",
    "dyadic_maximal",
    "hardy_norm",
    "holder_upper_bound",
    "lower_bound_estimate",
    "max_resolution",
    "paraproduct",
    "paraproduct_adjoint",
    "run_cli",
    "square_function",
    "synthesize",
    "version",
]
