"""
solver - Problèmes de Cauchy flous conformables linéaires

Modules:
- ivp: gabarits growth / decay / cooling, recette de Laplace, résidus
"""
from .ivp import (
    ClosedFormSolution,
    DerivationStep,
    IVPSolver,
    LinearFCFIVP,
    ResidualReport,
    Template,
    ivp_solver,
    residual_report,
    select_case,
    solve,
    solve_decay,
    solve_growth,
    solve_newton_cooling,
)

__all__ = [
    'ClosedFormSolution',
    'DerivationStep',
    'IVPSolver',
    'LinearFCFIVP',
    'ResidualReport',
    'Template',
    'ivp_solver',
    'residual_report',
    'select_case',
    'solve',
    'solve_decay',
    'solve_growth',
    'solve_newton_cooling',
]
