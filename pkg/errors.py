"""
errors.py - Exceptions de fuzzcal

Hiérarchie unique: tout échec mathématique dérive de FuzzcalError,
ce qui permet au CLI de distinguer validation (exit 2) et calcul (exit 3).
"""
from typing import Optional


class FuzzcalError(Exception):
    """Racine des erreurs fuzzcal"""
    pass


class DomainError(FuzzcalError, ValueError):
    """Argument hors du domaine de définition (niveau r, τ <= a, ...)"""
    pass


class InvalidSpecError(FuzzcalError):
    """Spécification de problème ou de fonction invalide"""
    pass


class NotTriangularError(FuzzcalError):
    """Le résultat sort de l'ensemble des nombres flous triangulaires"""
    pass


class NotGHDifferentiableError(FuzzcalError):
    """Aucun ordre des dérivées de composantes n'est cohérent"""

    def __init__(self, message: str, tau: Optional[float] = None):
        super().__init__(message)
        self.tau = tau


class MixedCaseError(FuzzcalError):
    """Linéarité demandée entre deux fonctions de cas différents"""
    pass


class IntegrationError(FuzzcalError):
    """Quadrature non convergée"""

    def __init__(self, message: str, achieved: float = float("nan")):
        super().__init__(message)
        self.achieved = achieved


class DivergentTransformError(FuzzcalError):
    """s sous l'abscisse de convergence"""

    def __init__(self, message: str, s: float, abscissa: float):
        super().__init__(message)
        self.s = s
        self.abscissa = abscissa


class NoSymbolicFormError(FuzzcalError):
    """Forme absente de la table symbolique"""
    pass


class UnsupportedProblemError(FuzzcalError):
    """Second membre hors des trois modèles résolus"""
    pass


class CaseMismatchError(FuzzcalError):
    """Le cas choisi a priori ne correspond pas au cas observé"""
    pass
