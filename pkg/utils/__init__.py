"""
utils - Utilitaires pour fuzzcal

Modules:
- decorators: Retry avec raffinement, chronométrage
"""
from .decorators import retry_with_refinement, timed

__all__ = [
    'retry_with_refinement',
    'timed'
]
