"""
fuzzy/functions.py - Fonctions à valeurs floues triangulaires

Une FuzzyFunction est représentée par ses trois fonctions composantes
τ ↦ (w1(τ), w2(τ), w3(τ)). Quand elle est construite à partir de termes
connus (constante, exponentielle conformable, sinus), elle garde cette
forme fermée pour la transformée de Laplace symbolique.

Les composantes acceptent des scalaires ou des tableaux numpy.
"""
import logging
import math
from fractions import Fraction
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from errors import DomainError, InvalidSpecError, NotTriangularError
from fuzzy.numbers import (
    TriangularFuzzyNumber,
    gh_difference,
    scalar_mul,
)

logger = logging.getLogger(__name__)

ComponentFn = Callable[[float], float]

TERM_KINDS = ("constant", "conformable_exp", "sin")


def _as_fraction(x: float, max_denominator: int = 1000) -> Optional[Fraction]:
    ratio = Fraction(x).limit_denominator(max_denominator)
    if abs(float(ratio) - x) <= 1e-12 * max(1.0, abs(x)):
        return ratio
    return None


def readable_ratio(x: float) -> str:
    """x en fraction p/q quand elle tombe juste, sinon notation g"""
    ratio = _as_fraction(x)
    return f"{x:.10g}" if ratio is None else str(ratio)


def _scaled_power(k: float, power: str) -> str:
    """k·power simplifié: -τ^(1/2)/10 plutôt que -0.1·τ^0.5"""
    ratio = _as_fraction(k)
    if ratio is None:
        return f"{k:.10g}·{power}"
    if ratio == 0:
        return "0"
    sign = "-" if ratio < 0 else ""
    p, q = abs(ratio.numerator), ratio.denominator
    body = power if p == 1 else f"{p}·{power}"
    return f"{sign}{body}" if q == 1 else f"{sign}{body}/{q}"


def _squeeze(values):
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        return float(arr)
    return arr


def _pointwise(fn: Callable[[float], float]) -> ComponentFn:
    """Rend une fonction scalaire utilisable sur un tableau"""
    def wrapped(tau):
        t = np.asarray(tau, dtype=float)
        if t.ndim == 0:
            return float(fn(float(t)))
        return np.array([fn(float(x)) for x in t.ravel()]).reshape(t.shape)
    return wrapped


@dataclass(frozen=True)
class FormTerm:
    """
    Terme de forme fermée: coefficient × noyau(τ), composante par composante

    kind:
        constant         noyau 1
        conformable_exp  noyau exp(rate·(τ-basepoint)^α/α)
        sin              noyau sin(rate·τ)
    """
    kind: str
    coefficient: TriangularFuzzyNumber
    rate: float = 0.0
    alpha: float = 1.0
    basepoint: float = 0.0

    def __post_init__(self):
        if self.kind not in TERM_KINDS:
            raise InvalidSpecError(f"Unknown term kind '{self.kind}'")
        if self.kind == "conformable_exp" and not (0.0 < self.alpha <= 1.0):
            raise DomainError(f"alpha={self.alpha} outside (0, 1]")

    def kernel(self, tau):
        t = np.asarray(tau, dtype=float)
        if self.kind == "constant":
            return np.ones_like(t)
        if self.kind == "sin":
            return np.sin(self.rate * t)
        # clamp sous le point base: le domaine est vérifié en amont
        elapsed = np.maximum(t - self.basepoint, 0.0)
        return np.exp(self.rate * np.power(elapsed, self.alpha) / self.alpha)

    def describe(self) -> str:
        coeff = str(self.coefficient)
        if self.kind == "constant":
            return coeff
        if self.kind == "sin":
            return f"{coeff}·sin({self.rate:.10g}·τ)"
        shift = "τ" if self.basepoint == 0 else f"(τ - {self.basepoint:.10g})"
        if self.alpha == 1.0:
            power = shift
        else:
            exponent = readable_ratio(self.alpha)
            power = f"{shift}^({exponent})" if "/" in exponent else f"{shift}^{exponent}"
        return f"{coeff}·exp({_scaled_power(self.rate / self.alpha, power)})"


def _terms_component(terms: Tuple[FormTerm, ...], index: int) -> ComponentFn:
    def component(tau):
        t = np.asarray(tau, dtype=float)
        total = np.zeros_like(t)
        for term in terms:
            total = total + term.coefficient.as_tuple()[index] * term.kernel(t)
        return _squeeze(total)
    return component


@dataclass(frozen=True, eq=False)
class FuzzyFunction:
    """
    Fonction τ ↦ w(τ) à valeurs floues triangulaires

    Attributes:
        components: (w1, w2, w3) avec w1 <= w2 <= w3 sur le domaine
        domain: intervalle fermé de définition
        form: termes de forme fermée (None si opaque)
        label: nom lisible
    """
    components: Tuple[ComponentFn, ComponentFn, ComponentFn]
    domain: Tuple[float, float] = (-math.inf, math.inf)
    form: Optional[Tuple[FormTerm, ...]] = None
    label: str = ""

    def __post_init__(self):
        if len(self.components) != 3:
            raise InvalidSpecError("A fuzzy function needs exactly three components")
        lo, hi = self.domain
        if not lo < hi:
            raise DomainError(f"Empty domain [{lo}, {hi}]")

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------

    @classmethod
    def from_callables(
        cls,
        w1: ComponentFn,
        w2: ComponentFn,
        w3: ComponentFn,
        domain: Tuple[float, float] = (-math.inf, math.inf),
        label: str = ""
    ) -> "FuzzyFunction":
        return cls(components=(w1, w2, w3), domain=tuple(domain), label=label)

    @classmethod
    def from_terms(
        cls,
        terms: Sequence[FormTerm],
        domain: Tuple[float, float] = (-math.inf, math.inf),
        label: str = ""
    ) -> "FuzzyFunction":
        terms = tuple(terms)
        components = tuple(_terms_component(terms, i) for i in range(3))
        return cls(components=components, domain=tuple(domain), form=terms, label=label)

    @classmethod
    def constant(
        cls,
        value: TriangularFuzzyNumber,
        domain: Tuple[float, float] = (-math.inf, math.inf)
    ) -> "FuzzyFunction":
        return cls.from_terms([FormTerm("constant", value)], domain, label=f"constant {value}")

    @classmethod
    def conformable_exp(
        cls,
        w0: TriangularFuzzyNumber,
        rate: float,
        alpha: float,
        basepoint: float = 0.0
    ) -> "FuzzyFunction":
        """w0 ⊙ exp(rate·(τ-a)^α/α) sur [a, +inf)"""
        term = FormTerm("conformable_exp", w0, rate=rate, alpha=alpha, basepoint=basepoint)
        return cls.from_terms([term], (basepoint, math.inf), label=term.describe())

    @classmethod
    def sines(
        cls,
        amplitudes: TriangularFuzzyNumber,
        frequency: float = 1.0,
        domain: Tuple[float, float] = (0.0, math.pi)
    ) -> "FuzzyFunction":
        """(A1, A2, A3)·sin(ωτ), composante par composante"""
        term = FormTerm("sin", amplitudes, rate=frequency)
        return cls.from_terms([term], domain, label=term.describe())

    @classmethod
    def from_samples(
        cls,
        taus: Sequence[float],
        values: Sequence[TriangularFuzzyNumber],
        label: str = "sampled"
    ) -> "FuzzyFunction":
        """Interpolation linéaire par morceaux d'échantillons"""
        grid = np.asarray(taus, dtype=float)
        if grid.ndim != 1 or len(grid) < 2 or len(grid) != len(values):
            raise InvalidSpecError("Samples need matching tau and value lists of length >= 2")
        if np.any(np.diff(grid) <= 0):
            raise InvalidSpecError("Sample abscissae must be strictly increasing")
        table = np.array([v.as_tuple() for v in values])

        def column(index: int) -> ComponentFn:
            ys = table[:, index].copy()
            return lambda tau: _squeeze(np.interp(tau, grid, ys))

        components = tuple(column(i) for i in range(3))
        return cls(components=components, domain=(float(grid[0]), float(grid[-1])), label=label)

    # ------------------------------------------------------------------
    # Évaluation
    # ------------------------------------------------------------------

    def contains(self, tau: float) -> bool:
        lo, hi = self.domain
        return lo <= tau <= hi

    def raw(self, tau) -> Tuple:
        """Composantes brutes, sans contrôle d'ordre ni de domaine"""
        return tuple(_squeeze(w(tau)) for w in self.components)

    def __call__(self, tau: float) -> TriangularFuzzyNumber:
        if not self.contains(tau):
            raise DomainError(f"tau={tau} outside domain {self.domain}")
        w1, w2, w3 = self.raw(float(tau))
        try:
            return TriangularFuzzyNumber.from_components(w1, w2, w3)
        except NotTriangularError as e:
            raise NotTriangularError(f"At tau={tau}: {e}")

    def diameter(self, tau):
        w1, _, w3 = self.raw(tau)
        return w3 - w1

    def describe(self) -> str:
        if self.form is None:
            return self.label or "<opaque fuzzy function>"
        if not self.form:
            return str(TriangularFuzzyNumber.zero())
        return " ⊕ ".join(term.describe() for term in self.form)

    # ------------------------------------------------------------------
    # Opérations ponctuelles
    # ------------------------------------------------------------------

    def _shared_domain(self, other: "FuzzyFunction") -> Tuple[float, float]:
        lo = max(self.domain[0], other.domain[0])
        hi = min(self.domain[1], other.domain[1])
        if not lo < hi:
            raise DomainError(f"Domains {self.domain} and {other.domain} do not overlap")
        return (lo, hi)

    def plus(self, other: "FuzzyFunction") -> "FuzzyFunction":
        """(f ⊕ g)(τ) = f(τ) ⊕ g(τ)"""
        domain = self._shared_domain(other)
        if self.form is not None and other.form is not None:
            return FuzzyFunction.from_terms(self.form + other.form, domain)
        components = tuple(
            (lambda f, g: (lambda tau: _squeeze(np.asarray(f(tau)) + np.asarray(g(tau)))))(f, g)
            for f, g in zip(self.components, other.components)
        )
        return FuzzyFunction(components=components, domain=domain,
                             label=f"{self.describe()} ⊕ {other.describe()}")

    def scaled(self, factor: float) -> "FuzzyFunction":
        """(λ ⊙ f)(τ); λ < 0 échange w1 et w3"""
        lam = float(factor)
        if self.form is not None:
            terms = tuple(replace(t, coefficient=scalar_mul(lam, t.coefficient)) for t in self.form)
            return FuzzyFunction.from_terms(terms, self.domain)
        order = (0, 1, 2) if lam >= 0 else (2, 1, 0)
        components = tuple(
            (lambda w: (lambda tau: _squeeze(lam * np.asarray(w(tau)))))(self.components[i])
            for i in order
        )
        return FuzzyFunction(components=components, domain=self.domain,
                             label=f"{lam:.10g} ⊙ {self.describe()}")

    def gh_minus(self, other: "FuzzyFunction") -> "FuzzyFunction":
        """(f ⊖_gH g)(τ), évaluée point par point"""
        domain = self._shared_domain(other)

        def component(index: int) -> ComponentFn:
            return _pointwise(lambda t: gh_difference(self(t), other(t)).value.as_tuple()[index])

        return FuzzyFunction(components=tuple(component(i) for i in range(3)), domain=domain,
                             label=f"{self.describe()} ⊖gH {other.describe()}")

    def anchored(self, tau0: float, value: TriangularFuzzyNumber) -> "FuzzyFunction":
        """Fixe exactement la valeur en tau0 (condition initiale)"""
        def component(w: ComponentFn, pinned: float) -> ComponentFn:
            def anchored_component(tau):
                t = np.asarray(tau, dtype=float)
                return _squeeze(np.where(t == tau0, pinned, w(t)))
            return anchored_component

        components = tuple(component(w, v) for w, v in zip(self.components, value.as_tuple()))
        return replace(self, components=components)


def sum_of(functions: Sequence[FuzzyFunction]) -> FuzzyFunction:
    """⊕ d'une liste non vide de fonctions"""
    if not functions:
        raise InvalidSpecError("Cannot sum an empty list of functions")
    total = functions[0]
    for f in functions[1:]:
        total = total.plus(f)
    return total
