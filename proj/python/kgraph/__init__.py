"""Kontsevich graph calculus for the tetrahedral flow."""

from ._core import (  # noqa: F401
    Graph,
    GraphSum,
    Multivector,
    ParseError,
    annihilating_ratio,
    ansatz_counts,
    collect_orbits,
    evaluate,
    expand_leibniz_text,
    gamma1,
    gamma2,
    jacobi_check,
    jacobiator_sum,
    lhs_trivector,
    nontriviality_feasible,
    schouten_bracket,
    schouten_components,
    skew_symmetrize,
    solve_factorization,
    tetra_flow,
    verify_factorization_text,
    wedge,
)
