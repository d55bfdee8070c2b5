"""
fuzzy - Nombres et fonctions flous triangulaires

Modules:
- numbers: TriangularFuzzyNumber, r-coupes, différence gH, Hausdorff
- functions: FuzzyFunction (composantes, formes fermées, échantillons)
"""
from .numbers import (
    DiffCase,
    GHDiffResult,
    RCutInterval,
    TriangularFuzzyNumber,
    add,
    gh_difference,
    hausdorff_distance,
    hukuhara_difference,
    norm,
    r_cut,
    r_cut_table,
    scalar_mul,
)
from .functions import FormTerm, FuzzyFunction, sum_of

__all__ = [
    'DiffCase',
    'GHDiffResult',
    'RCutInterval',
    'TriangularFuzzyNumber',
    'add',
    'gh_difference',
    'hausdorff_distance',
    'hukuhara_difference',
    'norm',
    'r_cut',
    'r_cut_table',
    'scalar_mul',
    'FormTerm',
    'FuzzyFunction',
    'sum_of',
]
