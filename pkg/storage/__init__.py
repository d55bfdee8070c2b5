"""
storage - Entrées / sorties de fuzzcal

Modules:
- problem_store: presets et documents JSON (problèmes, fonctions)
- trace_store: export CSV / JSON des tables
- golden_store: fichiers de référence pour la non-régression
"""
from .problem_store import FunctionSpec, ProblemStore, problem_store, PRESETS
from .trace_store import TraceStore, trace_store
from .golden_store import GoldenCheck, GoldenStatus, GoldenStore, golden_store

__all__ = [
    'FunctionSpec',
    'ProblemStore',
    'problem_store',
    'PRESETS',
    'TraceStore',
    'trace_store',
    'GoldenCheck',
    'GoldenStatus',
    'GoldenStore',
    'golden_store'
]
