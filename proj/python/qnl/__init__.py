"""Nonlocal nonlinear Schrodinger equation toolkit."""

from qnl._core import (  # noqa: F401
    Boundary,
    Grid1D,
    ModelParams,
    VariationalPoint,
    __version__,
    bohm_potential,
    classify_trajectory,
    collapse_energy,
    eta_minimizer_asymptotic,
    eta_minimizer_perturbative,
    eta_shape_factor,
    evolve,
    f1,
    first_order_shift,
    fisher_energy,
    kl_energy,
    make_grid,
    minimize_over_c,
    parse_range,
    q1nl,
    ratio_fixed_points,
    relax_ground_state,
    sho_eigenstate,
    step_backward_eta1,
    step_forward_eta1,
    step_forward_general,
    total_energy,
    variational_energy,
    variational_sweep,
)
