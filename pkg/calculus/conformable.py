"""
calculus/conformable.py - Dérivées gH et dérivées conformables floues

Opérations:
- gh_derivative: différences finies sur les composantes + test d'ordre (cas I / II)
- conformable_derivative: (τ-a)^{1-α} ⊙ dérivée gH
- conformable_integral: intégrale conformable par substitution u = (ξ-a)^α/α
- linéarité, fonction dérivée, traces

Le point base a n'est jamais franchi par le stencil: le pas se réduit
à basepoint_step_fraction·(τ-a) à son voisinage.
"""
import logging
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import IntegrationWarning, quad

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import (
    DomainError,
    IntegrationError,
    MixedCaseError,
    NotGHDifferentiableError,
)
from fuzzy.functions import FuzzyFunction, _pointwise
from fuzzy.numbers import (
    DiffCase,
    GHDiffResult,
    TriangularFuzzyNumber,
    add,
    gh_difference,
    scalar_mul,
)
from utils.decorators import retry_with_refinement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConformableContext:
    """Ordre α et point base a de toutes les opérations conformables"""
    alpha: float
    basepoint: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise DomainError(f"alpha={self.alpha} outside (0, 1]")
        if not (math.isfinite(self.basepoint) and self.basepoint >= 0.0):
            raise DomainError(f"basepoint={self.basepoint} must be >= 0")

    def prefactor(self, tau: float) -> float:
        """(τ-a)^{1-α}"""
        return (tau - self.basepoint) ** (1.0 - self.alpha)

    def clock(self, tau):
        """Temps conformable u = (τ-a)^α/α"""
        elapsed = np.maximum(np.asarray(tau, dtype=float) - self.basepoint, 0.0)
        u = np.power(elapsed, self.alpha) / self.alpha
        return float(u) if np.ndim(u) == 0 else u

    def inverse_clock(self, u):
        """τ = a + (αu)^{1/α}"""
        tau = self.basepoint + np.power(self.alpha * np.asarray(u, dtype=float), 1.0 / self.alpha)
        return float(tau) if np.ndim(tau) == 0 else tau


@retry_with_refinement(exceptions=(IntegrationError,))
def integrate(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    limit: int = 200,
    **quad_kwargs
) -> Tuple[float, float]:
    """
    scipy quad avec capture des IntegrationWarning

    Returns:
        (valeur, erreur absolue estimée)

    Raises:
        IntegrationError si la tolérance n'est pas atteinte
    """
    epsrel = config.numerics.quad_epsrel
    epsabs = config.numerics.quad_epsabs
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, abserr = quad(fn, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit, **quad_kwargs)

    problems = [w for w in caught if issubclass(w.category, IntegrationWarning)]
    if problems:
        # quad signale aussi des arrondis sur des intégrales déjà précises
        if abserr <= 10 * epsrel * abs(value) or abserr <= 1e-14:
            logger.debug(f"quad warning ignored on [{lo}, {hi}]: abserr={abserr:.3e}")
        else:
            raise IntegrationError(
                f"quad on [{lo:.6g}, {hi:.6g}] did not converge: {problems[0].message}",
                achieved=abserr
            )
    if not math.isfinite(value):
        raise IntegrationError(f"quad on [{lo:.6g}, {hi:.6g}] returned {value}", achieved=abserr)
    return value, abserr


class ConformableCalculus:
    """
    Calcul conformable flou sur des FuzzyFunction

    Utilise:
    - différences finies centrées (unilatérales au bord du domaine)
    - test d'ordre des dérivées de composantes pour le cas gH
    - scipy quad pour l'intégrale conformable
    """

    def __init__(self):
        self.diff_step = config.numerics.diff_step
        self.case_tol = config.numerics.case_tol
        self.basepoint_fraction = config.numerics.basepoint_step_fraction

    def _default_step(self, tau: float) -> float:
        return self.diff_step * max(1.0, abs(tau))

    def _classify(
        self,
        derivs: Tuple[float, float, float],
        values: Tuple[float, float, float],
        tau: float,
        reduced: bool
    ) -> GHDiffResult:
        """
        Test d'ordre: (d1 <= d2 <= d3) → cas I, (d3 <= d2 <= d1) → cas II

        Égalité à tolérance près (dérivée nette) → cas I.
        """
        d1, d2, d3 = derivs
        tol = self.case_tol * max(1.0, *(abs(d) for d in derivs), *(abs(v) for v in values))
        if d1 <= d2 + tol and d2 <= d3 + tol:
            value = TriangularFuzzyNumber.from_components(d1, d2, d3, tol=tol)
            return GHDiffResult(value, DiffCase.CASE_I, reduced)
        if d3 <= d2 + tol and d2 <= d1 + tol:
            value = TriangularFuzzyNumber.from_components(d3, d2, d1, tol=tol)
            return GHDiffResult(value, DiffCase.CASE_II, reduced)
        raise NotGHDifferentiableError(
            f"Component derivatives ({d1:.6g}, {d2:.6g}, {d3:.6g}) are not ordered at tau={tau}",
            tau=tau
        )

    def gh_derivative(self, f: FuzzyFunction, tau: float, h: Optional[float] = None) -> GHDiffResult:
        """
        Dérivée gH de f en τ

        Args:
            f: fonction floue
            tau: point du domaine
            h: pas (défaut diff_step·max(1,|τ|))

        Returns:
            GHDiffResult (reduced_accuracy si différence unilatérale)
        """
        tau = float(tau)
        if not f.contains(tau):
            raise DomainError(f"tau={tau} outside domain {f.domain}")
        step = self._default_step(tau) if h is None else float(h)
        if not step > 0:
            raise DomainError(f"Difference step must be > 0, got {step}")

        lo, hi = f.domain
        if tau - step >= lo and tau + step <= hi:
            plus = np.asarray(f.raw(tau + step))
            minus = np.asarray(f.raw(tau - step))
            derivs = (plus - minus) / (2.0 * step)
            reduced = False
        elif tau + 2 * step <= hi:
            logger.debug(f"One-sided forward difference at tau={tau}")
            f0, f1, f2 = (np.asarray(f.raw(tau + k * step)) for k in range(3))
            derivs = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * step)
            reduced = True
        elif tau - 2 * step >= lo:
            logger.debug(f"One-sided backward difference at tau={tau}")
            f0, f1, f2 = (np.asarray(f.raw(tau - k * step)) for k in range(3))
            derivs = (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * step)
            reduced = True
        else:
            raise DomainError(f"Domain {f.domain} too narrow for step {step}")

        values = tuple(float(v) for v in f.raw(tau))
        return self._classify(tuple(float(d) for d in derivs), values, tau, reduced)

    def _conformable_step(self, ctx: ConformableContext, tau: float) -> float:
        return min(self._default_step(tau), self.basepoint_fraction * (tau - ctx.basepoint))

    def conformable_derivative(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        tau: float
    ) -> GHDiffResult:
        """
        Dérivée conformable floue d'ordre α: (τ-a)^{1-α} ⊙ w'_gH(τ)

        Raises:
            DomainError si τ <= a
            NotGHDifferentiableError si les composantes ne sont pas ordonnées
        """
        tau = float(tau)
        if tau <= ctx.basepoint:
            raise DomainError(f"Conformable derivative needs tau > basepoint ({tau} <= {ctx.basepoint})")
        gh = self.gh_derivative(f, tau, h=self._conformable_step(ctx, tau))
        value = scalar_mul(ctx.prefactor(tau), gh.value)
        return GHDiffResult(value, gh.case, gh.reduced_accuracy)

    def conformable_derivative_limit(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        tau: float,
        eps: Optional[float] = None
    ) -> GHDiffResult:
        """
        Définition par la limite: [f(τ + ε(τ-a)^{1-α}) ⊖_gH f(τ)] / ε

        Évaluée à ε fini; précision d'ordre un.
        """
        tau = float(tau)
        if tau <= ctx.basepoint:
            raise DomainError(f"Conformable derivative needs tau > basepoint ({tau} <= {ctx.basepoint})")
        prefactor = ctx.prefactor(tau)
        if eps is None:
            eps = self._conformable_step(ctx, tau) / prefactor
        if not f.contains(tau + eps * prefactor):
            eps = -eps  # quotient à gauche au bord droit
        quotient = gh_difference(f(tau + eps * prefactor), f(tau))
        value = scalar_mul(1.0 / eps, quotient.value)
        if eps > 0:
            case = quotient.case
        else:
            case = DiffCase.CASE_II if quotient.case is DiffCase.CASE_I else DiffCase.CASE_I
        if quotient.cases_coincide():
            case = DiffCase.CASE_I
        return GHDiffResult(value, case, reduced_accuracy=True)

    def classify_case(self, f: FuzzyFunction, tau: float) -> DiffCase:
        """Cas de différentiabilité gH en τ"""
        return self.gh_derivative(f, tau).case

    def derivative_of_sum(
        self,
        f: FuzzyFunction,
        g: FuzzyFunction,
        ctx: ConformableContext,
        tau: float
    ) -> GHDiffResult:
        """
        Linéarité: T_α(f ⊕ g) = T_α(f) ⊕ T_α(g) quand les cas coïncident

        Raises:
            MixedCaseError si f est cas I et g cas II (ou inversement)
        """
        df = self.conformable_derivative(f, ctx, tau)
        dg = self.conformable_derivative(g, ctx, tau)
        if df.case is not dg.case and not (df.cases_coincide() or dg.cases_coincide()):
            raise MixedCaseError(
                f"Operands differ in case at tau={tau}: {df.case.label} vs {dg.case.label}"
            )
        case = dg.case if df.cases_coincide() else df.case
        return GHDiffResult(add(df.value, dg.value), case, df.reduced_accuracy or dg.reduced_accuracy)

    def derivative_function(self, f: FuzzyFunction, ctx: ConformableContext) -> FuzzyFunction:
        """La dérivée conformable comme FuzzyFunction sur (a, hi]"""

        @lru_cache(maxsize=4096)
        def derivative_at(tau: float) -> Tuple[float, float, float]:
            return self.conformable_derivative(f, ctx, tau).value.as_tuple()

        components = tuple(_pointwise(lambda t, i=i: derivative_at(t)[i]) for i in range(3))
        lo = max(f.domain[0], ctx.basepoint)
        return FuzzyFunction(components=components, domain=(lo, f.domain[1]),
                             label=f"T_{ctx.alpha:g}[{f.describe()}]")

    def derivative_trace(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        taus: Sequence[float]
    ) -> List[Tuple[float, GHDiffResult]]:
        """Dérivées conformables sur une grille (ordre de la grille conservé)"""
        return [(float(tau), self.conformable_derivative(f, ctx, tau)) for tau in taus]

    def conformable_integral(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        tau: float
    ) -> TriangularFuzzyNumber:
        """
        Intégrale conformable floue ∫_a^τ (ξ-a)^{α-1} w(ξ) dξ

        Calculée composante par composante après u = (ξ-a)^α/α, qui
        supprime la singularité en ξ = a:
            ∫_0^{(τ-a)^α/α} w(a + (αu)^{1/α}) du
        """
        tau = float(tau)
        if tau <= ctx.basepoint:
            raise DomainError(f"Conformable integral needs tau > basepoint ({tau} <= {ctx.basepoint})")
        if not (f.contains(tau) and f.domain[0] <= ctx.basepoint):
            raise DomainError(f"[{ctx.basepoint}, {tau}] not inside domain {f.domain}")

        upper = ctx.clock(tau)
        floor = np.nextafter(ctx.basepoint, math.inf)
        parts = []
        errors = []
        for w in f.components:
            value, abserr = integrate(
                lambda u, w=w: float(w(max(ctx.inverse_clock(u), floor))), 0.0, upper
            )
            parts.append(value)
            errors.append(abserr)
        logger.debug(f"Conformable integral to tau={tau}: abserr={max(errors):.3e}")
        tol = max(config.numerics.equality_tol, 10 * config.numerics.quad_epsrel)
        return TriangularFuzzyNumber.from_components(*parts, tol=tol)


# Instance exportée
conformable_calculus = ConformableCalculus()

gh_derivative = conformable_calculus.gh_derivative
conformable_derivative = conformable_calculus.conformable_derivative
conformable_derivative_limit = conformable_calculus.conformable_derivative_limit
classify_case = conformable_calculus.classify_case
derivative_of_sum = conformable_calculus.derivative_of_sum
derivative_function = conformable_calculus.derivative_function
derivative_trace = conformable_calculus.derivative_trace
conformable_integral = conformable_calculus.conformable_integral
