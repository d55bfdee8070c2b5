"""
solver/ivp.py - Problèmes de Cauchy flous conformables linéaires

Trois gabarits, résolus en forme fermée par la transformée de Laplace:
- growth:  T_α w = κ ⊙ w                 → w0 e^{κu},            cas I
- decay:   T_α w = (-1)κ ⊙ w             → w0 e^{-κu},           cas II
- cooling: T_α w = (-1)κ ⊙ (w ⊖ M)       → (w0 ⊖ M) e^{-κu} ⊕ M, cas II
avec u = (τ-τ0)^α/α.

Recette en quatre étapes:
  i.   transformer l'équation
  ii.  appliquer la transformée de la dérivée (selon le cas)
  iii. résoudre l'équation algébrique en W(s)
  iv.  inverser W par la table
Le cas choisi est ensuite contrôlé numériquement sur une grille.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import (
    CaseMismatchError,
    DomainError,
    InvalidSpecError,
    UnsupportedProblemError,
)
from fuzzy.functions import FuzzyFunction
from fuzzy.numbers import (
    DiffCase,
    TriangularFuzzyNumber,
    hausdorff_distance,
    hukuhara_difference,
    norm,
    r_cut,
    scalar_mul,
)
from calculus.conformable import ConformableContext, conformable_calculus
from calculus.laplace import SymbolicTerm, SymbolicTransform, conformable_laplace

logger = logging.getLogger(__name__)


class Template(Enum):
    """Gabarits d'équations résolubles"""
    GROWTH = "growth"
    DECAY = "decay"
    COOLING = "cooling"


@dataclass(frozen=True)
class LinearFCFIVP:
    """
    T_α w(τ) = sign·κ ⊙ w(τ)            (sans ambiant)
    T_α w(τ) = (-1)κ ⊙ (w(τ) ⊖ M)       (avec ambiant M)
    w(τ0) = w0
    """
    kappa: float
    sign: int
    w0: TriangularFuzzyNumber
    ctx: ConformableContext
    ambient: Optional[TriangularFuzzyNumber] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidSpecError(f"sign must be +1 or -1, got {self.sign}")
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise InvalidSpecError(f"kappa must be a finite real >= 0, got {self.kappa}")

    @property
    def tau0(self) -> float:
        return self.ctx.basepoint

    @property
    def rate(self) -> float:
        """Taux effectif λ = sign·κ"""
        return self.sign * self.kappa

    @property
    def template(self) -> Template:
        if self.ambient is None:
            return Template.GROWTH if self.sign > 0 else Template.DECAY
        if self.sign < 0:
            return Template.COOLING
        raise UnsupportedProblemError("An ambient term is only supported with a cooling (negative) rate")

    def rhs(self, tau: float, w: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
        """Second membre 𝔉(τ, w)"""
        if self.ambient is None:
            return scalar_mul(self.rate, w)
        return scalar_mul(self.rate, hukuhara_difference(w, self.ambient))

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> "LinearFCFIVP":
        """
        Construit un problème depuis le document JSON
        {template, kappa, alpha, tau0, w0: [a,b,c], ambient?: [a,b,c]}
        """
        if not isinstance(doc, dict):
            raise InvalidSpecError("Problem spec must be a JSON object")
        try:
            template = Template(doc["template"])
            kappa = float(doc["kappa"])
            alpha = float(doc["alpha"])
            tau0 = float(doc.get("tau0", 0.0))
        except KeyError as e:
            raise InvalidSpecError(f"Missing problem field {e}")
        except (TypeError, ValueError) as e:
            raise InvalidSpecError(f"Invalid problem field: {e}")

        w0 = TriangularFuzzyNumber.from_json(doc.get("w0"))
        ambient = doc.get("ambient")
        if template is Template.COOLING and ambient is None:
            raise InvalidSpecError("The cooling template needs an 'ambient' value")
        if template is not Template.COOLING and ambient is not None:
            raise InvalidSpecError(f"The {template.value} template takes no 'ambient' value")
        ctx = ConformableContext(alpha=alpha, basepoint=tau0)
        sign = 1 if template is Template.GROWTH else -1
        return cls(
            kappa=kappa,
            sign=sign,
            w0=w0,
            ctx=ctx,
            ambient=TriangularFuzzyNumber.from_json(ambient) if ambient is not None else None
        )

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "template": self.template.value,
            "kappa": self.kappa,
            "alpha": self.ctx.alpha,
            "tau0": self.tau0,
            "w0": self.w0.to_json(),
        }
        if self.ambient is not None:
            doc["ambient"] = self.ambient.to_json()
        return doc


@dataclass(frozen=True)
class DerivationStep:
    """Étape de la recette (i à iv)"""
    step: str
    title: str
    detail: str

    def to_json(self) -> Dict[str, str]:
        return {"step": self.step, "title": self.title, "detail": self.detail}


@dataclass(frozen=True)
class ClosedFormSolution:
    """Solution en forme fermée et trace de sa dérivation"""
    expression: FuzzyFunction
    case: DiffCase
    derivation: Tuple[DerivationStep, ...]
    transform: Optional[SymbolicTransform] = None

    def __call__(self, tau: float) -> TriangularFuzzyNumber:
        return self.expression(tau)

    def describe(self) -> str:
        return f"w(τ) = {self.expression.describe()}"

    def trace(self, taus: Sequence[float]) -> List[Tuple[float, TriangularFuzzyNumber]]:
        """Lignes tau,w1,w2,w3"""
        return [(float(tau), self(float(tau))) for tau in taus]

    def fan(self, taus: Sequence[float], levels: int) -> List[Tuple[float, float, float, float]]:
        """Éventail des r-coupes: lignes tau,r,lo,hi triées par τ puis r"""
        if levels < 2:
            raise DomainError(f"Need at least 2 r levels, got {levels}")
        rows = []
        for tau in taus:
            value = self(float(tau))
            for r in np.linspace(0.0, 1.0, levels):
                cut = r_cut(value, float(r))
                rows.append((float(tau), float(r), cut.lo, cut.hi))
        return rows


@dataclass(frozen=True)
class ResidualReport:
    """Contrôle a posteriori: équation différentielle et condition initiale"""
    max_residual: float
    worst_tau: float
    magnitude: float
    tolerance: float
    case_agreement: bool
    initial_defect: float
    points: int

    @property
    def passes(self) -> bool:
        scale = max(1.0, self.magnitude)
        return (
            self.max_residual < self.tolerance
            and self.case_agreement
            and self.initial_defect <= config.numerics.equality_tol * scale
        )


class IVPSolver:
    """
    Solveur par transformée de Laplace conformable

    Utilise:
    - conformable_laplace pour les étapes ii et iv
    - conformable_calculus pour le contrôle du cas et des résidus
    """

    def __init__(self):
        self.probe_offset = config.laplace.probe_offset
        self.validation_grid_n = config.solver.validation_grid_n
        self.validation_span = config.solver.validation_span
        self.residual_grid_n = config.solver.residual_grid_n
        self.residual_rtol = config.solver.residual_rtol

    def select_case(self, problem: LinearFCFIVP) -> DiffCase:
        """λ > 0 → cas I; λ < 0 → cas II; λ = 0 → cas I (solution constante)"""
        return DiffCase.CASE_II if problem.rate < 0 else DiffCase.CASE_I

    def _transformed_rhs(self, problem: LinearFCFIVP, W: SymbolicTransform, s: float) -> TriangularFuzzyNumber:
        """Transformée du second membre évaluée en s"""
        value = W.evaluate(s).value
        if problem.ambient is None:
            return scalar_mul(problem.rate, value)
        shifted = hukuhara_difference(value, scalar_mul(1.0 / s, problem.ambient))
        return scalar_mul(problem.rate, shifted)

    def _recipe(self, problem: LinearFCFIVP) -> ClosedFormSolution:
        ctx, w0, kappa = problem.ctx, problem.w0, problem.kappa
        case = self.select_case(problem)
        lam = problem.rate
        steps = []

        if problem.ambient is None:
            steps.append(DerivationStep(
                "i", "transform",
                f"L{{T_α w}}(s) = {lam:.10g} ⊙ W(s)"
            ))
        else:
            steps.append(DerivationStep(
                "i", "transform",
                f"L{{T_α w}}(s) = {lam:.10g} ⊙ (W(s) ⊖ {problem.ambient}/s)"
            ))

        if case is DiffCase.CASE_I:
            steps.append(DerivationStep(
                "ii", "derivative theorem (CaseI)",
                f"s ⊙ W(s) ⊖ {w0} = L{{T_α w}}(s)"
            ))
        else:
            steps.append(DerivationStep(
                "ii", "derivative theorem (CaseII)",
                f"(-1) ⊙ {w0} ⊖gH (-1)s ⊙ W(s) = L{{T_α w}}(s)"
            ))

        if problem.ambient is None:
            terms = (SymbolicTerm(w0, lam),)
        else:
            difference = hukuhara_difference(w0, problem.ambient)
            terms = (SymbolicTerm(difference, lam), SymbolicTerm(problem.ambient, 0.0))
        W = SymbolicTransform(terms, ctx.alpha, ctx.basepoint)

        probe = max(W.abscissa, 0.0) + self.probe_offset
        lhs = conformable_laplace.laplace_of_derivative(W, w0, case, probe)
        rhs = self._transformed_rhs(problem, W, probe)
        gap = hausdorff_distance(lhs, rhs)
        if gap > 1e-9 * max(1.0, norm(lhs), norm(rhs)):
            raise CaseMismatchError(
                f"Transformed equation not satisfied at s={probe}: gap {gap:.3e} ({case.label})"
            )
        steps.append(DerivationStep(
            "iii", "algebraic solve",
            f"W(s) = {W.describe()}  (checked at s={probe:.10g})"
        ))

        expression = conformable_laplace.laplace_inverse(W).anchored(ctx.basepoint, w0)
        steps.append(DerivationStep(
            "iv", "inverse transform",
            f"w(τ) = {expression.describe()}"
        ))
        solution = ClosedFormSolution(expression, case, tuple(steps), W)
        self._validate_case(solution, problem)
        logger.info(f"Solved {problem.template.value}: {solution.describe()} [{case.label}]")
        return solution

    def _validate_case(self, solution: ClosedFormSolution, problem: LinearFCFIVP):
        """Le cas numérique doit coïncider avec le cas choisi (hors points nets)"""
        start = problem.tau0
        for k in range(1, self.validation_grid_n + 1):
            tau = start + self.validation_span * k / self.validation_grid_n
            derivative = conformable_calculus.conformable_derivative(solution.expression, problem.ctx, tau)
            if derivative.case is not solution.case and not derivative.cases_coincide():
                raise CaseMismatchError(
                    f"Solution is {derivative.case.label} at tau={tau}, expected {solution.case.label}"
                )

    def solve_growth(self, w0: TriangularFuzzyNumber, kappa: float, ctx: ConformableContext) -> ClosedFormSolution:
        """T_α w = κ ⊙ w, κ > 0"""
        if not kappa > 0:
            raise DomainError(f"Growth needs kappa > 0 (got {kappa}); use solve_decay")
        return self._recipe(LinearFCFIVP(kappa=kappa, sign=1, w0=w0, ctx=ctx))

    def solve_decay(self, w0: TriangularFuzzyNumber, kappa: float, ctx: ConformableContext) -> ClosedFormSolution:
        """T_α w = (-1)κ ⊙ w, κ > 0"""
        if not kappa > 0:
            raise DomainError(f"Decay needs kappa > 0 (got {kappa}); use solve_growth")
        return self._recipe(LinearFCFIVP(kappa=kappa, sign=-1, w0=w0, ctx=ctx))

    def solve_newton_cooling(
        self,
        w0: TriangularFuzzyNumber,
        ambient: TriangularFuzzyNumber,
        kappa: float,
        ctx: ConformableContext
    ) -> ClosedFormSolution:
        """
        T_α w = (-1)κ ⊙ (w ⊖ M), κ > 0

        Raises:
            NotTriangularError si w0 ⊖ M n'existe pas (Hukuhara)
        """
        if not kappa > 0:
            raise DomainError(f"Cooling needs kappa > 0, got {kappa}")
        return self._recipe(LinearFCFIVP(kappa=kappa, sign=-1, w0=w0, ctx=ctx, ambient=ambient))

    def solve(self, problem: LinearFCFIVP) -> ClosedFormSolution:
        """Aiguillage vers le gabarit; κ = 0 donne la solution constante"""
        template = problem.template
        if problem.kappa == 0:
            if template is Template.COOLING:
                raise UnsupportedProblemError("Cooling needs kappa > 0")
            logger.debug("Zero rate: constant solution")
            return self._recipe(problem)
        if template is Template.GROWTH:
            return self.solve_growth(problem.w0, problem.kappa, problem.ctx)
        if template is Template.DECAY:
            return self.solve_decay(problem.w0, problem.kappa, problem.ctx)
        return self.solve_newton_cooling(problem.w0, problem.ambient, problem.kappa, problem.ctx)

    def residual_report(
        self,
        solution: ClosedFormSolution,
        problem: LinearFCFIVP,
        grid_n: Optional[int] = None,
        span: Optional[float] = None
    ) -> ResidualReport:
        """
        Résidu max_τ D(T_α w(τ), 𝔉(τ, w(τ))) sur (τ0, τ0+span] et défaut initial D(w(τ0), w0)

        Le seuil est residual_rtol·(1 + magnitude) avec la magnitude
        maximale de w et de 𝔉 sur la grille.
        """
        grid_n = grid_n or self.residual_grid_n
        span = span or self.validation_span
        ctx = problem.ctx

        worst_ratio = 0.0
        worst_tau = problem.tau0
        max_residual = 0.0
        magnitude = 0.0
        agreement = True
        for k in range(1, grid_n + 1):
            tau = problem.tau0 + span * k / grid_n
            derivative = conformable_calculus.conformable_derivative(solution.expression, ctx, tau)
            value = solution(tau)
            rhs = problem.rhs(tau, value)
            residual = hausdorff_distance(derivative.value, rhs)
            local = max(norm(value), norm(rhs))
            ratio = residual / (1.0 + local)
            if ratio > worst_ratio:
                worst_ratio, worst_tau = ratio, tau
            max_residual = max(max_residual, residual)
            magnitude = max(magnitude, local)
            if derivative.case is not solution.case and not derivative.cases_coincide():
                agreement = False

        defect = hausdorff_distance(solution(problem.tau0), problem.w0)
        tolerance = self.residual_rtol * (1.0 + magnitude)
        logger.debug(
            f"Residual {max_residual:.3e} (tol {tolerance:.3e}) worst at tau={worst_tau:.6g}, "
            f"initial defect {defect:.3e}"
        )
        return ResidualReport(
            max_residual=max_residual,
            worst_tau=worst_tau,
            magnitude=magnitude,
            tolerance=tolerance,
            case_agreement=agreement,
            initial_defect=defect,
            points=grid_n,
        )


# Instance exportée
ivp_solver = IVPSolver()

select_case = ivp_solver.select_case
solve_growth = ivp_solver.solve_growth
solve_decay = ivp_solver.solve_decay
solve_newton_cooling = ivp_solver.solve_newton_cooling
solve = ivp_solver.solve
residual_report = ivp_solver.residual_report
