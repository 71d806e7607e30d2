"""Generalized conjugation over finite coupling spaces.

Conjugation and symmetrization of finite couplings, greedy descent to
self-conjugate valuations with minimality probes, and discretized
representing functions of sampled monotone operators on product grids.
"""

from ._core import (
    ContractError,
    CouplingMatrix,
    InvariantError,
    OperatorSample,
    ProductGrid,
    ResourceError,
    build_grid_coupling,
    conjugate1,
    conjugate2,
    counterexample_fixture,
    descent_step,
    diag_halves,
    duality_product,
    fitzpatrick_value,
    fixed_point_implies_minimal_check,
    ft_membership_grid,
    general_minimal,
    indicator,
    is_in_H,
    j_transform_grid,
    membership_equivalence,
    minimality_probe,
    monotonicity_check,
    run_property_suite,
    self_conjugate_representer,
    solve_fixpoint,
    solve_fixpoint_from_top,
    solve_from_below,
    subdifferential_check,
    sym_conjugate,
    symmetrize,
    triple_conjugate_residual,
)

__all__ = [
    "ContractError",
    "CouplingMatrix",
    "InvariantError",
    "OperatorSample",
    "ProductGrid",
    "ResourceError",
    "build_grid_coupling",
    "conjugate1",
    "conjugate2",
    "counterexample_fixture",
    "descent_step",
    "diag_halves",
    "duality_product",
    "fitzpatrick_value",
    "fixed_point_implies_minimal_check",
    "ft_membership_grid",
    "general_minimal",
    "indicator",
    "is_in_H",
    "j_transform_grid",
    "membership_equivalence",
    "minimality_probe",
    "monotonicity_check",
    "run_property_suite",
    "self_conjugate_representer",
    "solve_fixpoint",
    "solve_fixpoint_from_top",
    "solve_from_below",
    "subdifferential_check",
    "sym_conjugate",
    "symmetrize",
    "triple_conjugate_residual",
]

__version__ = "0.1.0"
