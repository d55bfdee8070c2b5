"""
conftest.py - Fixtures partagées des tests fuzzcal

- fonctions des exemples (sinus, croissance, refroidissement)
- famille de fonctions floues lisses aléatoires (graine fixe) avec
  dérivées exactes, pour les comparaisons aux oracles
"""
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Tuple

import numpy as np
import pytest

import sys
sys.path.insert(0, str(Path(__file__).parent))

from fuzzy.numbers import DiffCase, TriangularFuzzyNumber
from fuzzy.functions import FuzzyFunction
from calculus.conformable import ConformableContext
from solver.ivp import LinearFCFIVP
from storage.problem_store import problem_store

ROOT = Path(__file__).parent
SEED = 20240917


@dataclass(frozen=True)
class SmoothCase:
    """Fonction floue lisse dont la dérivée et le cas sont connus"""
    function: FuzzyFunction
    derivative: Callable[[float], Tuple[float, float, float]]
    case: DiffCase
    alpha: float
    basepoint: float
    tau: float

    @property
    def ctx(self) -> ConformableContext:
        return ConformableContext(self.alpha, self.basepoint)


def make_smooth_case(rng: np.random.Generator) -> SmoothCase:
    """
    w2 = A sin(ωτ+φ) + Bτ + C, w1 = w2 - p1 e^{kτ}, w3 = w2 + p3 e^{kτ}

    k > 0: diamètre croissant (cas I); k < 0: décroissant (cas II).
    """
    A, omega, phi = rng.uniform(0.5, 3.0), rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi)
    B, C = rng.uniform(-1.0, 1.0), rng.uniform(-5.0, 5.0)
    p1, p3 = rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)
    k = rng.uniform(0.2, 1.0) * rng.choice([-1.0, 1.0])

    def w2(t):
        return A * np.sin(omega * np.asarray(t) + phi) + B * np.asarray(t) + C

    def w1(t):
        return w2(t) - p1 * np.exp(k * np.asarray(t))

    def w3(t):
        return w2(t) + p3 * np.exp(k * np.asarray(t))

    def derivative(t: float) -> Tuple[float, float, float]:
        d2 = A * omega * math.cos(omega * t + phi) + B
        spread = k * math.exp(k * t)
        d1, d3 = d2 - p1 * spread, d2 + p3 * spread
        return (d1, d2, d3) if k > 0 else (d3, d2, d1)

    basepoint = rng.uniform(0.0, 1.0)
    return SmoothCase(
        function=FuzzyFunction.from_callables(w1, w2, w3, label="smooth"),
        derivative=derivative,
        case=DiffCase.CASE_I if k > 0 else DiffCase.CASE_II,
        alpha=float(rng.uniform(0.1, 1.0)),
        basepoint=float(basepoint),
        tau=float(basepoint + rng.uniform(0.1, 3.0)),
    )


@pytest.fixture(scope="session")
def smooth_family() -> List[SmoothCase]:
    """200 fonctions lisses, tirage reproductible"""
    rng = np.random.default_rng(SEED)
    return [make_smooth_case(rng) for _ in range(200)]


@pytest.fixture
def sines() -> FuzzyFunction:
    """(2.3 sin τ, 5.6 sin τ, 9.7 sin τ) sur [0, π]"""
    return FuzzyFunction.sines(TriangularFuzzyNumber(2.3, 5.6, 9.7))


@pytest.fixture
def half() -> ConformableContext:
    return ConformableContext(alpha=0.5, basepoint=0.0)


@pytest.fixture
def yogurt_w0() -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(516.0, 540.0, 598.0)


@pytest.fixture
def yogurt_problem() -> LinearFCFIVP:
    return problem_store.load_problem(problem_store.preset("yogurt"))


@pytest.fixture
def compartment_problem() -> LinearFCFIVP:
    return problem_store.load_problem(problem_store.preset("compartment"))


@pytest.fixture
def cooling_problem() -> LinearFCFIVP:
    return problem_store.load_problem(problem_store.preset("cooling"))


@pytest.fixture
def growth_function(yogurt_w0) -> FuzzyFunction:
    """w0 e^{κτ^α/α}, κ=1/30, α=1/5"""
    return FuzzyFunction.conformable_exp(yogurt_w0, 1 / 30, 0.2)
