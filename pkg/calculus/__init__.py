"""
calculus - Calcul conformable flou

Modules:
- conformable: dérivées gH et conformables, intégrale conformable
- switching: points de commutation (balayage + bissection)
- laplace: transformée de Laplace conformable (numérique, symbolique, inverse)
"""
from .conformable import (
    ConformableCalculus,
    ConformableContext,
    conformable_calculus,
    classify_case,
    conformable_derivative,
    conformable_derivative_limit,
    conformable_integral,
    derivative_function,
    derivative_of_sum,
    derivative_trace,
    gh_derivative,
)
from .switching import (
    SwitchKind,
    SwitchingPoint,
    SwitchingPointDetector,
    find_switching_points,
    switching_detector,
)
from .laplace import (
    ConformableLaplace,
    ExpBound,
    SymbolicTerm,
    SymbolicTransform,
    TransformValue,
    conformable_laplace,
    estimate_exp_bound,
    laplace_inverse,
    laplace_numeric,
    laplace_of_derivative,
    laplace_symbolic,
    transform_combination,
    transform_trace,
)

__all__ = [
    'ConformableCalculus',
    'ConformableContext',
    'conformable_calculus',
    'classify_case',
    'conformable_derivative',
    'conformable_derivative_limit',
    'conformable_integral',
    'derivative_function',
    'derivative_of_sum',
    'derivative_trace',
    'gh_derivative',
    'SwitchKind',
    'SwitchingPoint',
    'SwitchingPointDetector',
    'find_switching_points',
    'switching_detector',
    'ConformableLaplace',
    'ExpBound',
    'SymbolicTerm',
    'SymbolicTransform',
    'TransformValue',
    'conformable_laplace',
    'estimate_exp_bound',
    'laplace_inverse',
    'laplace_numeric',
    'laplace_of_derivative',
    'laplace_symbolic',
    'transform_combination',
    'transform_trace',
]
