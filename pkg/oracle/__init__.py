"""
oracle - Oracles de vérification indépendants (support des tests)

Modules:
- verify: intervalles sur niveaux r, quadrature, Richardson, balayages
"""
from .verify import (
    IntervalFn,
    oracle_conformable_limit,
    oracle_exponential,
    oracle_finite_diff,
    oracle_gh_difference,
    oracle_hausdorff,
    oracle_interval_sum,
    oracle_quadrature,
    oracle_quadrature_with_error,
    oracle_scalar_mul,
    oracle_sign_changes,
)

__all__ = [
    'IntervalFn',
    'oracle_conformable_limit',
    'oracle_exponential',
    'oracle_finite_diff',
    'oracle_gh_difference',
    'oracle_hausdorff',
    'oracle_interval_sum',
    'oracle_quadrature',
    'oracle_quadrature_with_error',
    'oracle_scalar_mul',
    'oracle_sign_changes',
]
