"""
oracle/verify.py - Oracles de vérification indépendants

Réalisations brutes, sans rien importer de fuzzy/, calculus/ ni solver/:
- arithmétique d'intervalles sur une grille dense de niveaux r
- quadrature de Simpson adaptative (domaines infinis, singularité algébrique)
- différences finies avec extrapolation de Richardson
- balayage exhaustif des changements de signe

Les nombres flous sont passés comme triplets (a, b, c), les fonctions
comme callables réels.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import IntegrationError

logger = logging.getLogger(__name__)

Triple = Tuple[float, float, float]
RealFn = Callable[[float], float]


@dataclass(frozen=True)
class IntervalFn:
    """Famille d'intervalles [lo(r), hi(r)] sur les niveaux r = k/N"""
    levels: np.ndarray
    lo: np.ndarray
    hi: np.ndarray

    def is_nested(self, tol: float = 0.0) -> bool:
        """lo croissant, hi décroissant, lo <= hi"""
        return bool(
            np.all(np.diff(self.lo) >= -tol)
            and np.all(np.diff(self.hi) <= tol)
            and np.all(self.lo <= self.hi + tol)
        )

    def rows(self) -> List[Tuple[float, float, float]]:
        return [(float(r), float(lo), float(hi)) for r, lo, hi in zip(self.levels, self.lo, self.hi)]


def _levels(levels: Optional[int]) -> np.ndarray:
    n = config.oracle.levels if levels is None else int(levels)
    if n < 2:
        raise ValueError(f"Need at least 2 levels, got {n}")
    return np.arange(n + 1) / n


def _cuts(p: Triple, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    a, b, c = (float(v) for v in p)
    return a + r * (b - a), c - r * (c - b)


# ----------------------------------------------------------------------
# Arithmétique d'intervalles
# ----------------------------------------------------------------------

def oracle_gh_difference(p: Triple, q: Triple, levels: Optional[int] = None) -> IntervalFn:
    """Différence gH niveau par niveau: [min(Δlo, Δhi), max(Δlo, Δhi)]"""
    r = _levels(levels)
    plo, phi = _cuts(p, r)
    qlo, qhi = _cuts(q, r)
    dlo, dhi = plo - qlo, phi - qhi
    return IntervalFn(r, np.minimum(dlo, dhi), np.maximum(dlo, dhi))


def oracle_interval_sum(p: Triple, q: Triple, levels: Optional[int] = None) -> IntervalFn:
    r = _levels(levels)
    plo, phi = _cuts(p, r)
    qlo, qhi = _cuts(q, r)
    return IntervalFn(r, plo + qlo, phi + qhi)


def oracle_scalar_mul(factor: float, p: Triple, levels: Optional[int] = None) -> IntervalFn:
    r = _levels(levels)
    lo, hi = _cuts(p, r)
    ends = np.vstack([factor * lo, factor * hi])
    return IntervalFn(r, ends.min(axis=0), ends.max(axis=0))


def oracle_hausdorff(p: Triple, q: Triple, levels: Optional[int] = None) -> float:
    """sup_r max(|Δlo|, |Δhi|) sur la grille de niveaux"""
    r = _levels(levels)
    plo, phi = _cuts(p, r)
    qlo, qhi = _cuts(q, r)
    return float(np.max(np.maximum(np.abs(plo - qlo), np.abs(phi - qhi))))


# ----------------------------------------------------------------------
# Quadrature
# ----------------------------------------------------------------------

def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def _adaptive_simpson(g: RealFn, a: float, b: float, tol: float, max_depth: int) -> Tuple[float, float]:
    fa, fm, fb = g(a), g(0.5 * (a + b)), g(b)
    stack = [(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), tol, 0)]
    total, error = 0.0, 0.0
    while stack:
        lo, hi, flo, fmid, fhi, whole, local_tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = g(0.5 * (lo + mid))
        fr = g(0.5 * (mid + hi))
        left = _simpson(flo, fl, fmid, mid - lo)
        right = _simpson(fmid, fr, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * local_tol:
            total += left + right + delta / 15.0
            error += abs(delta) / 15.0
        elif depth >= max_depth:
            raise IntegrationError(
                f"Adaptive Simpson did not converge near [{lo:.6g}, {hi:.6g}]", achieved=abs(delta)
            )
        else:
            stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * local_tol, depth + 1))
            stack.append((lo, mid, flo, fl, fmid, left, 0.5 * local_tol, depth + 1))
    return total, error


def oracle_quadrature_with_error(
    g: RealFn,
    domain: Tuple[float, float],
    tol: Optional[float] = None,
    alg_exponent: Optional[float] = None,
    max_depth: int = 50
) -> Tuple[float, float]:
    """
    ∫_lo^hi g, ou ∫_lo^hi (x-lo)^β g(x) dx si alg_exponent=β (β > -1)

    La singularité est supprimée par x = lo + v^{1/(β+1)}; un domaine
    infini est ramené à [0, 1) par x = lo + t/(1-t).

    Returns:
        (valeur, erreur estimée)
    """
    lo, hi = (float(v) for v in domain)
    tol = config.oracle.quad_tol if tol is None else tol
    if not lo < hi:
        raise ValueError(f"Empty integration domain [{lo}, {hi}]")

    if alg_exponent is not None:
        beta = float(alg_exponent)
        if beta <= -1:
            raise ValueError(f"alg_exponent must exceed -1, got {beta}")
        power = 1.0 / (beta + 1.0)
        inner = g
        if math.isinf(hi):
            # (x-lo)^β g(x) sans substitution singulière: découpe en [lo, lo+1] ∪ [lo+1, inf)
            head, head_err = oracle_quadrature_with_error(inner, (lo, lo + 1.0), tol / 2, beta, max_depth)
            tail, tail_err = oracle_quadrature_with_error(
                lambda x: (x - lo) ** beta * inner(x), (lo + 1.0, math.inf), tol / 2, None, max_depth
            )
            return head + tail, head_err + tail_err
        upper = (hi - lo) ** (beta + 1.0)
        value, error = _adaptive_simpson(lambda v: inner(lo + v ** power), 0.0, upper, tol * (beta + 1.0), max_depth)
        return value / (beta + 1.0), error / (beta + 1.0)

    if math.isinf(hi):
        def mapped(t: float) -> float:
            if t >= 1.0:
                return 0.0
            x = lo + t / (1.0 - t)
            return g(x) / (1.0 - t) ** 2
        return _adaptive_simpson(mapped, 0.0, 1.0, tol, max_depth)

    return _adaptive_simpson(g, lo, hi, tol, max_depth)


def oracle_quadrature(
    g: RealFn,
    domain: Tuple[float, float],
    tol: Optional[float] = None,
    alg_exponent: Optional[float] = None
) -> float:
    """Valeur seule de oracle_quadrature_with_error"""
    value, _ = oracle_quadrature_with_error(g, domain, tol, alg_exponent)
    return value


# ----------------------------------------------------------------------
# Dérivées
# ----------------------------------------------------------------------

def oracle_finite_diff(g: RealFn, tau: float, h: Optional[float] = None, levels: Optional[int] = None) -> float:
    """
    Dérivée par différences centrées et extrapolation de Richardson

    Tableau de Neville sur les pas h, h/2, h/4, ...
    """
    levels = config.oracle.richardson_levels if levels is None else int(levels)
    step = 1e-2 * max(abs(tau), 1e-3) if h is None else float(h)
    table: List[List[float]] = []
    for i in range(levels):
        hi = step / 2 ** i
        row = [(g(tau + hi) - g(tau - hi)) / (2.0 * hi)]
        for j in range(1, i + 1):
            row.append(row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (4 ** j - 1))
        table.append(row)
    return table[-1][-1]


def oracle_conformable_limit(
    components: Sequence[RealFn],
    alpha: float,
    basepoint: float,
    tau: float,
    tol: float = 1e-9
) -> Tuple[Triple, str]:
    """
    Dérivée conformable par la définition: d/dε w_i(τ + ε(τ-a)^{1-α}) en ε = 0

    Returns:
        (triplet ordonné, "I" ou "II")
    """
    if tau <= basepoint:
        raise ValueError("tau must exceed the basepoint")
    factor = (tau - basepoint) ** (1.0 - alpha)
    h = 1e-2 * (tau - basepoint) / factor
    derivs = [oracle_finite_diff(lambda e, w=w: w(tau + e * factor), 0.0, h=h) for w in components]
    d1, d2, d3 = derivs
    slack = tol * max(1.0, *(abs(d) for d in derivs))
    if d1 <= d2 + slack and d2 <= d3 + slack:
        return (d1, d2, d3), "I"
    if d3 <= d2 + slack and d2 <= d1 + slack:
        return (d3, d2, d1), "II"
    raise ValueError(f"Component derivatives {derivs} are not ordered at tau={tau}")


def oracle_sign_changes(g: RealFn, lo: float, hi: float, n: int = 20001) -> List[Tuple[float, str]]:
    """Changements de signe de g par balayage exhaustif: (milieu, "TypeI"/"TypeII")"""
    xs = np.linspace(lo, hi, n)
    values = [g(float(x)) for x in xs]
    changes = []
    previous = None
    for x, v in zip(xs, values):
        if v == 0:
            continue
        if previous is not None and (v > 0) != (previous[1] > 0):
            kind = "TypeI" if previous[1] > 0 else "TypeII"
            changes.append((0.5 * (previous[0] + float(x)), kind))
        previous = (float(x), v)
    return changes


def oracle_exponential(w0: Triple, kappa: float, alpha: float, tau0: float, tau: float) -> Triple:
    """w0_i · exp(κ (τ-τ0)^α / α) en arithmétique math pure"""
    factor = math.exp(kappa * (tau - tau0) ** alpha / alpha)
    return tuple(float(v) * factor for v in w0)
