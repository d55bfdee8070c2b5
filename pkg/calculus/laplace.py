"""
calculus/laplace.py - Transformée de Laplace conformable floue

W(s) = ∫_{τ0}^∞ (τ-τ0)^{α-1} e^{-s(τ-τ0)^α/α} w(τ) dτ, composante par composante.

Deux chemins numériques:
- substitution: u = (τ-τ0)^α/α ramène à ∫_0^U e^{-su} w(τ0 + (αu)^{1/α}) du
- direct: intégrale de définition en x = τ-τ0, poids algébrique x^{α-1} géré par quad

Table symbolique: constante k → k/s, exponentielle conformable e^{κu} → 1/(s-κ),
combinaisons à coefficients flous. L'inverse est une lecture de table.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import (
    DivergentTransformError,
    DomainError,
    InvalidSpecError,
    NoSymbolicFormError,
)
from fuzzy.functions import FormTerm, FuzzyFunction, readable_ratio
from fuzzy.numbers import (
    DiffCase,
    TriangularFuzzyNumber,
    add,
    gh_difference,
    hukuhara_difference,
    norm,
    scalar_mul,
)
from calculus.conformable import ConformableContext, integrate

logger = logging.getLogger(__name__)

METHODS = ("substitution", "direct")


@dataclass(frozen=True)
class ExpBound:
    """Borne exponentielle conformable D(w(τ), 0) <= M e^{c(τ-τ0)^α/α}"""
    M: float
    c: float
    alpha: float

    @property
    def abscissa(self) -> float:
        """Abscisse de convergence retenue (s réel > max(0, c))"""
        return max(0.0, self.c)


@dataclass(frozen=True)
class TransformValue:
    """Valeur W(s) de la transformée"""
    s: float
    value: TriangularFuzzyNumber
    abserr: float = 0.0

    def row(self) -> Tuple[float, float, float, float]:
        return (self.s, *self.value.as_tuple())


@dataclass(frozen=True)
class SymbolicTerm:
    """coefficient / (s - pole)"""
    coefficient: TriangularFuzzyNumber
    pole: float

    def evaluate(self, s: float) -> TriangularFuzzyNumber:
        return scalar_mul(1.0 / (s - self.pole), self.coefficient)

    def describe(self) -> str:
        if self.pole == 0:
            return f"{self.coefficient}/s"
        sign = "-" if self.pole > 0 else "+"
        return f"{self.coefficient}/(s {sign} {readable_ratio(abs(self.pole))})"


@dataclass(frozen=True)
class SymbolicTransform:
    """Somme de fractions rationnelles coefficient/(s - pole), d'ordre α en τ0"""
    terms: Tuple[SymbolicTerm, ...]
    alpha: float
    basepoint: float = 0.0

    @property
    def abscissa(self) -> float:
        if not self.terms:
            return -math.inf
        return max(term.pole for term in self.terms)

    def evaluate(self, s: float) -> TransformValue:
        s = float(s)
        if s <= self.abscissa:
            raise DivergentTransformError(
                f"s={s} is not above the abscissa {self.abscissa}", s=s, abscissa=self.abscissa
            )
        total = TriangularFuzzyNumber.zero()
        for term in self.terms:
            total = add(total, term.evaluate(s))
        return TransformValue(s=s, value=total)

    def plus(self, other: "SymbolicTransform") -> "SymbolicTransform":
        if (self.alpha, self.basepoint) != (other.alpha, other.basepoint):
            raise NoSymbolicFormError("Cannot add transforms of different order or basepoint")
        return SymbolicTransform(self.terms + other.terms, self.alpha, self.basepoint)

    def describe(self) -> str:
        if not self.terms:
            return "0"
        return " ⊕ ".join(term.describe() for term in self.terms)


class ConformableLaplace:
    """
    Transformée de Laplace conformable floue

    Utilise:
    - scipy quad (poids algébrique pour le chemin direct)
    - numpy.polyfit pour la borne exponentielle
    - la table symbolique pour les formes fermées
    """

    def __init__(self):
        self.truncation_eps = config.laplace.truncation_eps
        self.tail = config.laplace.tail
        self.tail_grid_n = config.laplace.tail_grid_n
        self.inflation = config.laplace.bound_inflation
        self.direct_pieces = 30

    # ------------------------------------------------------------------
    # Borne exponentielle
    # ------------------------------------------------------------------

    def estimate_exp_bound(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        tail: Optional[Tuple[float, float]] = None,
        grid_n: Optional[int] = None
    ) -> ExpBound:
        """
        Ajuste log D(w(τ), 0) = log M + c·(τ-τ0)^α/α sur la queue [T1, T2]

        M est ensuite relevé pour couvrir aussi les points de tête
        (τ0, τ0+T1], puis gonflé de bound_inflation.
        """
        t1, t2 = tail or self.tail
        grid_n = grid_n or self.tail_grid_n
        if not (0 < t1 < t2):
            raise DomainError(f"Tail needs 0 < T1 < T2, got [{t1}, {t2}]")
        start = ctx.basepoint
        if f.domain[1] < start + t2 or f.domain[0] > start:
            raise DomainError(f"Function domain {f.domain} does not cover [{start}, {start + t2}]")

        tail_taus = start + np.linspace(t1, t2, grid_n)
        head_taus = start + np.geomspace(t1 * 1e-6, t1, grid_n)
        tail_norms = np.array([norm(f(t)) for t in tail_taus])
        head_norms = np.array([norm(f(t)) for t in head_taus])
        tail_x = ctx.clock(tail_taus)
        head_x = ctx.clock(head_taus)

        positive = tail_norms > 0
        if not positive.any() and not (head_norms > 0).any():
            return ExpBound(M=self.truncation_eps, c=0.0, alpha=ctx.alpha)

        if positive.sum() >= 2:
            slope, intercept = np.polyfit(tail_x[positive], np.log(tail_norms[positive]), 1)
        else:
            slope, intercept = 0.0, -math.inf
        slope = float(slope)

        # M couvre chaque échantillon avec le c retourné, négatif compris
        xs = np.concatenate([head_x, tail_x])
        norms = np.concatenate([head_norms, tail_norms])
        covering = float(np.max(norms * np.exp(-slope * xs)))
        fitted = math.exp(intercept) if math.isfinite(intercept) else 0.0
        M = max(covering, fitted) * self.inflation
        logger.debug(f"Exp bound: M={M:.6g}, c={slope:.6g} (alpha={ctx.alpha})")
        return ExpBound(M=max(M, self.truncation_eps), c=slope, alpha=ctx.alpha)

    # ------------------------------------------------------------------
    # Transformée numérique
    # ------------------------------------------------------------------

    def _truncation(self, bound: ExpBound, s: float) -> float:
        """U tel que M e^{(c-s)U} = eps"""
        decay = s - bound.abscissa
        return max(math.log(bound.M / self.truncation_eps), 1.0) / decay

    def _component_substitution(self, w, ctx: ConformableContext, s: float, upper: float) -> Tuple[float, float]:
        return integrate(lambda u: math.exp(-s * u) * float(w(ctx.inverse_clock(u))), 0.0, upper)

    def _component_direct(self, w, ctx: ConformableContext, s: float, upper: float) -> Tuple[float, float]:
        a, alpha = ctx.basepoint, ctx.alpha
        # variable décalée x = τ - a: les bornes proches de a restent distinctes
        x_edges = [0.0] + [
            (alpha * upper * 2.0 ** (-j)) ** (1.0 / alpha) for j in range(self.direct_pieces, -1, -1)
        ]

        def smooth(x: float) -> float:
            return math.exp(-s * x ** alpha / alpha) * float(w(a + x))

        def full(x: float) -> float:
            return x ** (alpha - 1.0) * smooth(x)

        value, abserr = integrate(smooth, x_edges[0], x_edges[1], weight="alg", wvar=(alpha - 1.0, 0.0))
        for lo, hi in zip(x_edges[1:-1], x_edges[2:]):
            if hi <= lo:
                continue
            piece, err = integrate(full, lo, hi)
            value += piece
            abserr += err
        return value, abserr

    def laplace_numeric(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        s: float,
        bound: Optional[ExpBound] = None,
        method: str = "substitution"
    ) -> TransformValue:
        """
        Transformée numérique W(s)

        Args:
            f: fonction floue définie sur [τ0, +inf)
            ctx: ordre α et point base τ0
            s: variable réelle > abscisse
            bound: borne exponentielle (estimée si absente)
            method: "substitution" ou "direct"

        Raises:
            DivergentTransformError si s <= abscisse
            IntegrationError si la quadrature échoue
        """
        if method not in METHODS:
            raise InvalidSpecError(f"Unknown transform method '{method}'")
        s = float(s)
        bound = bound or self.estimate_exp_bound(f, ctx)
        if s <= bound.abscissa:
            raise DivergentTransformError(
                f"s={s} is not above the abscissa {bound.abscissa:.6g}", s=s, abscissa=bound.abscissa
            )

        upper = self._truncation(bound, s)
        if f.domain[1] < ctx.inverse_clock(upper):
            raise DomainError(f"Function domain {f.domain} ends before the truncation point")
        component = self._component_substitution if method == "substitution" else self._component_direct

        parts, errors = [], []
        for w in f.components:
            value, abserr = component(w, ctx, s, upper)
            parts.append(value)
            errors.append(abserr)

        logger.debug(f"W({s}) via {method}: U={upper:.6g}, abserr={max(errors):.3e}")
        tol = max(config.numerics.equality_tol, 10 * config.numerics.quad_epsrel)
        value = TriangularFuzzyNumber.from_components(*parts, tol=tol)
        return TransformValue(s=s, value=value, abserr=max(errors))

    def transform_trace(
        self,
        f: FuzzyFunction,
        ctx: ConformableContext,
        s_values: Sequence[float],
        bound: Optional[ExpBound] = None,
        method: str = "substitution"
    ) -> List[TransformValue]:
        """W(s) pour une liste de s (borne estimée une seule fois)"""
        bound = bound or self.estimate_exp_bound(f, ctx)
        return [self.laplace_numeric(f, ctx, s, bound=bound, method=method) for s in s_values]

    def transform_combination(
        self,
        a: float,
        f: FuzzyFunction,
        b: float,
        g: FuzzyFunction,
        ctx: ConformableContext,
        s: float,
        gh: bool = False
    ) -> TriangularFuzzyNumber:
        """
        a ⊙ W_f(s) ⊕ b ⊙ W_g(s)   (ou ⊖_gH si gh=True)

        Égal à la transformée de a⊙f ⊕ b⊙g pour a et b de même signe.
        """
        if a * b < 0:
            raise DomainError(f"Linearity needs scalars of the same sign, got a={a}, b={b}")
        left = scalar_mul(a, self.laplace_numeric(f, ctx, s).value)
        right = scalar_mul(b, self.laplace_numeric(g, ctx, s).value)
        if gh:
            return gh_difference(left, right).value
        return add(left, right)

    # ------------------------------------------------------------------
    # Table symbolique
    # ------------------------------------------------------------------

    def laplace_symbolic(self, f: FuzzyFunction, ctx: ConformableContext) -> SymbolicTransform:
        """
        Transformée en forme fermée d'une fonction construite par termes

        Raises:
            NoSymbolicFormError si un terme n'est pas dans la table
        """
        if f.form is None:
            raise NoSymbolicFormError(f"'{f.describe()}' has no closed form")
        if f.domain[0] > ctx.basepoint or f.domain[1] != math.inf:
            raise NoSymbolicFormError(f"Domain {f.domain} does not cover [{ctx.basepoint}, inf)")

        terms = []
        for term in f.form:
            if term.kind == "constant":
                terms.append(SymbolicTerm(term.coefficient, 0.0))
            elif (
                term.kind == "conformable_exp"
                and math.isclose(term.alpha, ctx.alpha, rel_tol=1e-15)
                and math.isclose(term.basepoint, ctx.basepoint, rel_tol=1e-15, abs_tol=1e-15)
            ):
                terms.append(SymbolicTerm(term.coefficient, term.rate))
            else:
                raise NoSymbolicFormError(f"No table entry for term {term.describe()}")
        return SymbolicTransform(tuple(terms), ctx.alpha, ctx.basepoint)

    def laplace_inverse(self, W: SymbolicTransform) -> FuzzyFunction:
        """
        Inverse par lecture de table: k/s → k, k/(s-κ) → k e^{κ(τ-τ0)^α/α}

        Raises:
            NoSymbolicFormError si un terme n'est pas rationnel simple
        """
        form = []
        for term in W.terms:
            if not math.isfinite(term.pole):
                raise NoSymbolicFormError(f"No table entry for {term.describe()}")
            if term.pole == 0:
                form.append(FormTerm("constant", term.coefficient))
            else:
                form.append(FormTerm(
                    "conformable_exp", term.coefficient,
                    rate=term.pole, alpha=W.alpha, basepoint=W.basepoint
                ))
        return FuzzyFunction.from_terms(form, (W.basepoint, math.inf))

    # ------------------------------------------------------------------
    # Transformée de la dérivée
    # ------------------------------------------------------------------

    def laplace_of_derivative(
        self,
        W: Union[TransformValue, SymbolicTransform, TriangularFuzzyNumber],
        w0: TriangularFuzzyNumber,
        case: DiffCase,
        s: Optional[float] = None
    ) -> TriangularFuzzyNumber:
        """
        L{T_α w}(s) en fonction de W(s) et de w(τ0)

        Cas I:  s ⊙ W ⊖ w0 (différence de Hukuhara)
        Cas II: (-1) ⊙ w0 ⊖_gH (-1)s ⊙ W

        Raises:
            NotTriangularError si la différence sort des nombres triangulaires
        """
        if isinstance(W, SymbolicTransform):
            if s is None:
                raise InvalidSpecError("A symbolic transform needs s")
            value = W.evaluate(s).value
        elif isinstance(W, TransformValue):
            s = W.s if s is None else s
            value = W.value
        else:
            if s is None:
                raise InvalidSpecError("A raw transform value needs s")
            value = W
        s = float(s)

        if case is DiffCase.CASE_I:
            return hukuhara_difference(scalar_mul(s, value), w0)
        return gh_difference(scalar_mul(-1.0, w0), scalar_mul(-s, value)).value


# Instance exportée
conformable_laplace = ConformableLaplace()

estimate_exp_bound = conformable_laplace.estimate_exp_bound
laplace_numeric = conformable_laplace.laplace_numeric
transform_trace = conformable_laplace.transform_trace
transform_combination = conformable_laplace.transform_combination
laplace_symbolic = conformable_laplace.laplace_symbolic
laplace_inverse = conformable_laplace.laplace_inverse
laplace_of_derivative = conformable_laplace.laplace_of_derivative
