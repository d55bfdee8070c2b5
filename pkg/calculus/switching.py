"""
calculus/switching.py - Détection des points de commutation

Un point de commutation sépare une zone de différentiabilité cas I
(diamètre croissant) d'une zone cas II (diamètre décroissant).

Méthode:
1. Pente du diamètre g(τ) = d/dτ (w3 - w1) sur une grille uniforme
2. Encadrement de chaque changement de signe
3. Raffinement par bissection (scipy.optimize.bisect)
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import bisect

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import DomainError
from fuzzy.functions import FuzzyFunction

logger = logging.getLogger(__name__)


class SwitchKind(Enum):
    """Type du point de commutation"""
    TYPE_I = "TypeI"    # cas I → cas II
    TYPE_II = "TypeII"  # cas II → cas I


@dataclass(frozen=True)
class SwitchingPoint:
    """Point ξ0 où le cas de différentiabilité change"""
    location: float
    kind: SwitchKind

    def to_json(self) -> dict:
        return {"location": self.location, "kind": self.kind.value}


class SwitchingPointDetector:
    """Balayage + bissection sur la pente du diamètre"""

    def __init__(self):
        self.grid_n = config.switching.grid_n
        self.rel_xtol = config.switching.rel_xtol
        self.diff_step = config.numerics.diff_step
        self.noise_tol = config.numerics.case_tol

    def diameter_slope(self, f: FuzzyFunction, tau: float) -> float:
        """g(τ) par différence centrée, unilatérale au bord du domaine"""
        lo, hi = f.domain
        h = self.diff_step * max(1.0, abs(tau))
        if tau - h >= lo and tau + h <= hi:
            return (f.diameter(tau + h) - f.diameter(tau - h)) / (2.0 * h)
        if tau + 2 * h <= hi:
            return (-3.0 * f.diameter(tau) + 4.0 * f.diameter(tau + h) - f.diameter(tau + 2 * h)) / (2.0 * h)
        return (3.0 * f.diameter(tau) - 4.0 * f.diameter(tau - h) + f.diameter(tau - 2 * h)) / (2.0 * h)

    def _sign(self, f: FuzzyFunction, tau: float, slope: float) -> int:
        # pentes au niveau du bruit d'arrondi: traitées comme nulles
        scale = max(1.0, abs(f.diameter(tau)))
        if abs(slope) <= self.noise_tol * scale:
            return 0
        return 1 if slope > 0 else -1

    def detect(
        self,
        f: FuzzyFunction,
        interval: Tuple[float, float],
        grid_n: Optional[int] = None
    ) -> List[SwitchingPoint]:
        """
        Points de commutation de f dans [lo, hi]

        Args:
            f: fonction floue
            interval: (lo, hi) avec lo < hi
            grid_n: points de balayage (défaut 1024)

        Returns:
            Liste triée de SwitchingPoint (vide si aucun changement)
        """
        lo, hi = (float(v) for v in interval)
        grid_n = self.grid_n if grid_n is None else int(grid_n)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"Invalid search interval [{lo}, {hi}]")
        if grid_n < 2:
            raise DomainError(f"grid_n must be >= 2, got {grid_n}")
        if not (f.contains(lo) and f.contains(hi)):
            raise DomainError(f"[{lo}, {hi}] not inside domain {f.domain}")

        xtol = self.rel_xtol * (hi - lo)
        slope = lambda t: self.diameter_slope(f, t)

        points: List[SwitchingPoint] = []
        previous: Optional[Tuple[float, int]] = None
        for tau in np.linspace(lo, hi, grid_n):
            tau = float(tau)
            sign = self._sign(f, tau, slope(tau))
            if sign == 0:
                continue
            if previous is not None and sign != previous[1]:
                left, right = previous[0], tau
                location = bisect(slope, left, right, xtol=xtol)
                kind = SwitchKind.TYPE_I if previous[1] > 0 else SwitchKind.TYPE_II
                logger.debug(f"Switch {kind.value} bracketed in [{left:.6g}, {right:.6g}] → {location:.12g}")
                points.append(SwitchingPoint(float(location), kind))
            previous = (tau, sign)

        logger.info(f"{len(points)} switching point(s) in [{lo:.6g}, {hi:.6g}]")
        return points


# Instance exportée
switching_detector = SwitchingPointDetector()

find_switching_points = switching_detector.detect
