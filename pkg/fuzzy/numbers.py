"""
fuzzy/numbers.py - Nombres flous triangulaires et arithmétique gH

Substrat algébrique de fuzzcal:
- TriangularFuzzyNumber (a, b, c) et ses r-coupes
- Addition, produit par un scalaire réel
- Différence de Hukuhara généralisée (cas I / cas II)
- Distance de Hausdorff

Toutes les valeurs sont immuables; chaque opération est une fonction pure.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import DomainError, InvalidSpecError, NotTriangularError

logger = logging.getLogger(__name__)


class DiffCase(Enum):
    """Branche de différentiabilité gH (ou α_gH)"""
    CASE_I = "I"    # les dérivées des extrémités gardent leur ordre
    CASE_II = "II"  # l'ordre est inversé

    @property
    def label(self) -> str:
        return f"Case{self.value}"


def _scale(*values: float) -> float:
    return max(1.0, *(abs(v) for v in values))


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """
    Nombre flou triangulaire (a, b, c)

    La fonction d'appartenance monte linéairement de left à peak
    puis redescend jusqu'à right.
    """
    left: float
    peak: float
    right: float

    def __post_init__(self):
        values = (self.left, self.peak, self.right)
        if not all(math.isfinite(v) for v in values):
            raise NotTriangularError(f"Non-finite component in {values}")
        if not (self.left <= self.peak <= self.right):
            raise NotTriangularError(
                f"({self.left}, {self.peak}, {self.right}) violates left <= peak <= right"
            )

    @classmethod
    def from_components(
        cls,
        left: float,
        peak: float,
        right: float,
        tol: Optional[float] = None
    ) -> "TriangularFuzzyNumber":
        """
        Construit un nombre en absorbant les violations d'ordre d'arrondi

        Args:
            left, peak, right: composantes brutes
            tol: tolérance absolue relative à la magnitude (défaut: equality_tol)

        Returns:
            TriangularFuzzyNumber

        Raises:
            NotTriangularError si l'ordre est violé au-delà de la tolérance
        """
        tol = config.numerics.equality_tol if tol is None else tol
        a, b, c = float(left), float(peak), float(right)
        slack = tol * _scale(a, b, c)
        if a > b + slack or b > c + slack or a > c + slack:
            raise NotTriangularError(f"({a}, {b}, {c}) is not a triangular fuzzy number")
        if a > c:
            a = c = 0.5 * (a + c)
        b = min(max(b, a), c)
        return cls(a, b, c)

    @classmethod
    def crisp(cls, x: float) -> "TriangularFuzzyNumber":
        """Nombre réel vu comme nombre flou (x, x, x)"""
        return cls(float(x), float(x), float(x))

    @classmethod
    def zero(cls) -> "TriangularFuzzyNumber":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_json(cls, data: Sequence[float]) -> "TriangularFuzzyNumber":
        """Désérialise le tableau JSON [a, b, c]"""
        if not isinstance(data, (list, tuple)) or len(data) != 3:
            raise InvalidSpecError(f"Expected [a, b, c], got {data!r}")
        try:
            a, b, c = (float(v) for v in data)
        except (TypeError, ValueError) as e:
            raise InvalidSpecError(f"Non-numeric triangular number {data!r}: {e}")
        return cls(a, b, c)

    def to_json(self) -> List[float]:
        return [self.left, self.peak, self.right]

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.left, self.peak, self.right)

    def __iter__(self):
        return iter(self.as_tuple())

    @property
    def width(self) -> float:
        """Diamètre du support (c - a)"""
        return self.right - self.left

    def is_crisp(self, tol: float = 0.0) -> bool:
        return self.width <= tol * _scale(*self.as_tuple())

    def membership(self, x: float) -> float:
        """Degré d'appartenance de x"""
        a, b, c = self.as_tuple()
        if x == b:
            return 1.0
        if x < a or x > c:
            return 0.0
        if x < b:
            return (x - a) / (b - a)
        return (c - x) / (c - b)

    def r_cut(self, r: float) -> "RCutInterval":
        return r_cut(self, r)

    def __add__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        if not isinstance(other, TriangularFuzzyNumber):
            return NotImplemented
        return add(self, other)

    def __rmul__(self, factor: float) -> "TriangularFuzzyNumber":
        return scalar_mul(factor, self)

    def __str__(self) -> str:
        return f"({self.left:.10g}, {self.peak:.10g}, {self.right:.10g})"


@dataclass(frozen=True)
class RCutInterval:
    """r-coupe [lo, hi] au niveau r"""
    lo: float
    hi: float
    level: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"r-cut [{self.lo}, {self.hi}] is empty")

    def contains(self, other: "RCutInterval", tol: float = 0.0) -> bool:
        """Inclusion [other] ⊆ [self] à tol près"""
        return self.lo <= other.lo + tol and other.hi <= self.hi + tol


@dataclass(frozen=True)
class GHDiffResult:
    """Valeur d'une différence (ou dérivée) gH et son cas"""
    value: TriangularFuzzyNumber
    case: DiffCase
    reduced_accuracy: bool = False  # différence unilatérale au bord du domaine

    def cases_coincide(self, tol: Optional[float] = None) -> bool:
        """Valeur nette: les deux cas donnent le même résultat"""
        tol = config.numerics.case_tol if tol is None else tol
        return self.value.is_crisp(tol)



def r_cut(p: TriangularFuzzyNumber, r: float) -> RCutInterval:
    """
    r-coupe d'un nombre triangulaire

    Args:
        p: nombre flou
        r: niveau dans [0, 1]

    Returns:
        [a + r(b-a), c - r(c-b)]
    """
    if not (0.0 <= r <= 1.0):
        raise DomainError(f"Level r={r} outside [0, 1]")
    # forme barycentrique: exacte en r=0 et r=1
    lo = (1.0 - r) * p.left + r * p.peak
    hi = (1.0 - r) * p.right + r * p.peak
    return RCutInterval(lo=lo, hi=hi, level=r)


def r_cut_table(p: TriangularFuzzyNumber, levels: int) -> List[RCutInterval]:
    """Table des r-coupes sur une grille uniforme de niveaux"""
    if levels < 2:
        raise DomainError(f"Need at least 2 levels, got {levels}")
    return [r_cut(p, float(r)) for r in np.linspace(0.0, 1.0, levels)]


def add(p: TriangularFuzzyNumber, q: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    """Addition floue p ⊕ q (composante par composante)"""
    return TriangularFuzzyNumber(p.left + q.left, p.peak + q.peak, p.right + q.right)


def scalar_mul(factor: float, p: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    """
    Produit λ ⊙ p

    Un facteur négatif échange les extrémités.
    """
    lam = float(factor)
    if lam >= 0:
        return TriangularFuzzyNumber(lam * p.left, lam * p.peak, lam * p.right)
    return TriangularFuzzyNumber(lam * p.right, lam * p.peak, lam * p.left)


def gh_difference(p: TriangularFuzzyNumber, q: TriangularFuzzyNumber) -> GHDiffResult:
    """
    Différence de Hukuhara généralisée p ⊖_gH q

    Cas I: p = q ⊕ R  → R = (p.a-q.a, p.b-q.b, p.c-q.c)
    Cas II: q = p ⊕ (-1)R → R = (p.c-q.c, p.b-q.b, p.a-q.a)
    Si les deux sont valides (différence nette), le cas I est retenu.

    Raises:
        NotTriangularError si aucun candidat n'est triangulaire
    """
    da = p.left - q.left
    db = p.peak - q.peak
    dc = p.right - q.right
    try:
        return GHDiffResult(TriangularFuzzyNumber.from_components(da, db, dc), DiffCase.CASE_I)
    except NotTriangularError:
        pass
    try:
        return GHDiffResult(TriangularFuzzyNumber.from_components(dc, db, da), DiffCase.CASE_II)
    except NotTriangularError:
        raise NotTriangularError(f"{p} ⊖_gH {q} leaves the triangular numbers")


def hukuhara_difference(p: TriangularFuzzyNumber, q: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    """
    Différence de Hukuhara classique p ⊖ q (cas I obligatoire)

    Raises:
        NotTriangularError si seule la différence de cas II existe
    """
    result = gh_difference(p, q)
    if result.case is not DiffCase.CASE_I:
        raise NotTriangularError(f"Hukuhara difference {p} ⊖ {q} does not exist")
    return result.value


def hausdorff_distance(p: TriangularFuzzyNumber, q: TriangularFuzzyNumber) -> float:
    """
    Distance de Hausdorff sup_r d_H([p]^r, [q]^r)

    Les extrémités sont affines en r: le sup est atteint en r=0 ou r=1.
    """
    return max(abs(p.left - q.left), abs(p.peak - q.peak), abs(p.right - q.right))


def norm(p: TriangularFuzzyNumber) -> float:
    """D(p, 0)"""
    return max(abs(p.left), abs(p.peak), abs(p.right))
