"""Exact residue functionals on categories of matrix factorizations."""

from .cy import (
    BudgetError,
    CombinatorialFrame,
    NotACocycleError,
    VolumeForm,
    cocycle_basis,
    evaluate_theta,
    gram_matrix,
    is_coboundary,
    pairing,
    theta_kl,
    theta_main,
    theta_one_variable,
    theta_tilde,
)
from .hochschild import Chain, ChainSum, b_delta, b_mu, b_mu_doubleprime, b_mu_prime, full_b, norm_operator, tau
from .mfcat import (
    MatrixFactorization,
    Morphism,
    Superpotential,
    compose,
    delta,
    identity,
    koszul_factorization,
    make_factorization,
    supertrace,
)
from .polyring import Poly, format_poly, parse_poly, variables
from .residue import ResidueQuery, residue_local, residue_total

__all__ = [
    "BudgetError", "Chain", "ChainSum", "CombinatorialFrame", "MatrixFactorization", "Morphism",
    "NotACocycleError", "Poly", "ResidueQuery", "Superpotential", "VolumeForm", "b_delta", "b_mu",
    "b_mu_doubleprime", "b_mu_prime", "cocycle_basis", "compose", "delta", "evaluate_theta", "format_poly",
    "full_b", "gram_matrix", "identity", "is_coboundary", "koszul_factorization", "make_factorization",
    "norm_operator", "pairing", "parse_poly", "residue_local", "residue_total", "supertrace", "tau",
    "theta_kl", "theta_main", "theta_one_variable", "theta_tilde", "variables",
]
