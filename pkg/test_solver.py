"""
test_solver.py - Problèmes de Cauchy flous conformables

Les trois gabarits (croissance, décroissance, refroidissement), le contrôle
des résidus et l'aiguillage depuis les documents JSON.
"""
import math

import numpy as np
import pytest

from errors import DomainError, InvalidSpecError, NotTriangularError, UnsupportedProblemError
from fuzzy.numbers import DiffCase, TriangularFuzzyNumber, hausdorff_distance
from fuzzy.functions import FormTerm, FuzzyFunction
from calculus.conformable import ConformableContext
from calculus.switching import find_switching_points
from oracle.verify import oracle_exponential
from solver.ivp import ClosedFormSolution, LinearFCFIVP, Template, ivp_solver
from storage.problem_store import problem_store

T = TriangularFuzzyNumber
AMBIENT = T(6.8, 7.0, 7.85)


def relative_gap(value: T, expected) -> float:
    return max(abs(v - e) / max(1.0, abs(e)) for v, e in zip(value, expected))


# ----------------------------------------------------------------------
# Choix du cas
# ----------------------------------------------------------------------

def test_select_case(yogurt_problem, compartment_problem, cooling_problem):
    assert ivp_solver.select_case(yogurt_problem) is DiffCase.CASE_I
    assert ivp_solver.select_case(compartment_problem) is DiffCase.CASE_II
    assert ivp_solver.select_case(cooling_problem) is DiffCase.CASE_II

    still = LinearFCFIVP(kappa=0.0, sign=-1, w0=T(1, 2, 3), ctx=ConformableContext(0.5))
    assert ivp_solver.select_case(still) is DiffCase.CASE_I


# ----------------------------------------------------------------------
# Croissance
# ----------------------------------------------------------------------

def test_growth_matches_closed_form(yogurt_problem, yogurt_w0):
    solution = ivp_solver.solve(yogurt_problem)
    assert solution.case is DiffCase.CASE_I
    assert solution(1.0).as_tuple() == pytest.approx((609.58, 637.93, 706.45), abs=0.01)
    for tau in np.linspace(0.0, 5.0, 11):
        expected = oracle_exponential(yogurt_w0.as_tuple(), 1 / 30, 0.2, 0.0, float(tau))
        assert relative_gap(solution(float(tau)), expected) <= 1e-10
    assert "516" in solution.describe()
    assert "exp(τ^(1/5)/6)" in solution.describe()
    assert "/(s - 1/30)" in solution.transform.describe()
    assert [step.step for step in solution.derivation] == ["i", "ii", "iii", "iv"]


def test_crisp_growth_is_classical_exponential():
    solution = ivp_solver.solve_growth(T.crisp(1.0), 1.0, ConformableContext(1.0))
    assert solution(1.0).as_tuple() == pytest.approx((math.e,) * 3, rel=1e-12)


def test_random_growth_and_decay_against_oracle():
    rng = np.random.default_rng(11)
    for _ in range(20):
        w0 = T(*sorted(rng.uniform(0.5, 20.0, 3)))
        kappa = float(rng.uniform(0.05, 1.0))
        alpha = float(rng.uniform(0.2, 1.0))
        tau0 = float(rng.uniform(0.0, 2.0))
        ctx = ConformableContext(alpha, tau0)
        for sign, solve in ((1, ivp_solver.solve_growth), (-1, ivp_solver.solve_decay)):
            solution = solve(w0, kappa, ctx)
            for offset in (0.0, 0.3, 1.0, 2.5):
                tau = tau0 + offset
                expected = oracle_exponential(w0.as_tuple(), sign * kappa, alpha, tau0, tau)
                assert relative_gap(solution(tau), expected) <= 1e-10


def test_growth_needs_positive_rate(half):
    with pytest.raises(DomainError):
        ivp_solver.solve_growth(T(1, 2, 3), 0.0, half)
    with pytest.raises(DomainError):
        ivp_solver.solve_decay(T(1, 2, 3), -1.0, half)


# ----------------------------------------------------------------------
# Décroissance
# ----------------------------------------------------------------------

def test_decay_keeps_initial_value_and_shrinks(compartment_problem):
    solution = ivp_solver.solve(compartment_problem)
    assert solution.case is DiffCase.CASE_II
    assert solution(0.0) == T(3.97, 4.3, 5.1)
    widths = [solution(float(tau)).width for tau in np.linspace(0.0, 10.0, 41)]
    assert all(later < earlier for earlier, later in zip(widths, widths[1:]))


# ----------------------------------------------------------------------
# Refroidissement
# ----------------------------------------------------------------------

def test_cooling_closed_form(cooling_problem):
    solution = ivp_solver.solve(cooling_problem)
    assert solution.case is DiffCase.CASE_II
    assert solution(0.0) == T(59.1, 70.0, 80.6)
    assert "52.3" in solution.describe()
    assert "exp(-τ^(1/2)/10)" in solution.describe()
    assert solution.transform is not None
    difference = solution.transform.terms[0].coefficient
    assert difference.as_tuple() == pytest.approx((52.3, 63.0, 72.75), abs=1e-12)


def test_cooling_tends_to_ambient(cooling_problem):
    solution = ivp_solver.solve(cooling_problem)
    assert hausdorff_distance(solution(1e6), AMBIENT) < 1e-6


def test_cooling_from_ambient_stays_put(half):
    solution = ivp_solver.solve_newton_cooling(AMBIENT, AMBIENT, 0.05, half)
    for tau in (0.0, 0.5, 3.0, 100.0):
        assert hausdorff_distance(solution(tau), AMBIENT) <= 1e-12


def test_cooling_needs_hukuhara_difference(half):
    with pytest.raises(NotTriangularError):
        ivp_solver.solve_newton_cooling(T(10.0, 11.0, 12.0), T(0.0, 1.0, 5.0), 0.05, half)


# ----------------------------------------------------------------------
# Résidus
# ----------------------------------------------------------------------

@pytest.mark.parametrize("preset", ["yogurt", "compartment", "cooling"])
def test_residuals_pass(preset):
    problem = problem_store.load_problem(problem_store.preset(preset))
    solution = ivp_solver.solve(problem)
    report = ivp_solver.residual_report(solution, problem)
    assert report.case_agreement
    assert report.initial_defect == 0.0
    assert report.max_residual < report.tolerance
    assert report.passes
    assert report.points == 200


def test_residuals_catch_wrong_initial_value(cooling_problem):
    """Le coefficient 52.6 satisfait l'équation mais pas w(0) = w0"""
    wrong = FuzzyFunction.from_terms(
        [
            FormTerm("conformable_exp", T(52.6, 63.0, 72.75), rate=-1 / 20, alpha=0.5),
            FormTerm("constant", AMBIENT),
        ],
        (0.0, math.inf),
    )
    candidate = ClosedFormSolution(wrong, DiffCase.CASE_II, ())
    report = ivp_solver.residual_report(candidate, cooling_problem)
    assert report.max_residual < report.tolerance
    assert report.case_agreement
    assert report.initial_defect == pytest.approx(0.3, abs=1e-9)
    assert not report.passes

    good = ivp_solver.solve(cooling_problem)
    assert ivp_solver.residual_report(good, cooling_problem).passes


# ----------------------------------------------------------------------
# Aiguillage et documents
# ----------------------------------------------------------------------

def test_dispatch_from_presets():
    templates = {
        name: problem_store.load_problem(problem_store.preset(name)).template
        for name in ("yogurt", "compartment", "cooling")
    }
    assert templates == {
        "yogurt": Template.GROWTH,
        "compartment": Template.DECAY,
        "cooling": Template.COOLING,
    }


def test_zero_rate_gives_constant(half):
    problem = LinearFCFIVP(kappa=0.0, sign=1, w0=T(1, 2, 3), ctx=half)
    solution = ivp_solver.solve(problem)
    for tau in (0.0, 1.0, 50.0):
        assert solution(tau).as_tuple() == pytest.approx((1.0, 2.0, 3.0), rel=1e-14)


def test_problem_round_trip(cooling_problem):
    doc = cooling_problem.to_dict()
    assert doc["template"] == "cooling"
    assert doc["ambient"] == [6.8, 7.0, 7.85]
    assert LinearFCFIVP.from_dict(doc) == cooling_problem


@pytest.mark.parametrize("doc", [
    {"template": "growth", "alpha": 0.5, "w0": [1, 2, 3]},
    {"template": "cooling", "kappa": 0.1, "alpha": 0.5, "w0": [1, 2, 3]},
    {"template": "growth", "kappa": 0.1, "alpha": 0.5, "w0": [1, 2, 3], "ambient": [0, 0, 0]},
    {"template": "growth", "kappa": -0.1, "alpha": 0.5, "w0": [1, 2, 3]},
    {"template": "logistic", "kappa": 0.1, "alpha": 0.5, "w0": [1, 2, 3]},
    {"template": "growth", "kappa": "fast", "alpha": 0.5, "w0": [1, 2, 3]},
    {"template": "growth", "kappa": 0.1, "alpha": 0.5, "w0": [1, 2]},
])
def test_invalid_problem_documents(doc):
    with pytest.raises(InvalidSpecError):
        LinearFCFIVP.from_dict(doc)


def test_unsupported_problems(half):
    with pytest.raises(UnsupportedProblemError):
        ivp_solver.solve(LinearFCFIVP(kappa=0.0, sign=-1, w0=T(1, 2, 3), ctx=half, ambient=AMBIENT))
    with pytest.raises(UnsupportedProblemError):
        ivp_solver.solve(LinearFCFIVP(kappa=0.1, sign=1, w0=T(10, 11, 12), ctx=half, ambient=AMBIENT))


# ----------------------------------------------------------------------
# Éventail des r-coupes
# ----------------------------------------------------------------------

def test_fan_rows_are_nested_and_sorted(yogurt_problem):
    solution = ivp_solver.solve(yogurt_problem)
    taus = [0.0, 0.5, 1.0]
    rows = solution.fan(taus, 5)
    assert len(rows) == 15
    assert [row[:2] for row in rows] == sorted(row[:2] for row in rows)
    for tau in taus:
        cuts = [row for row in rows if row[0] == tau]
        for lower, upper in zip(cuts, cuts[1:]):
            assert lower[2] <= upper[2] <= upper[3] <= lower[3]


def test_fan_needs_two_levels(yogurt_problem):
    solution = ivp_solver.solve(yogurt_problem)
    with pytest.raises(DomainError):
        solution.fan([0.0], 1)


# ----------------------------------------------------------------------
# Invariants des solutions
# ----------------------------------------------------------------------

@pytest.mark.parametrize("alpha,tau0", [(0.3, 0.0), (0.7, 1.2), (1.0, 0.5)])
def test_crisp_data_give_real_solutions(alpha, tau0):
    ctx = ConformableContext(alpha, tau0)
    kappa = 0.4
    decay = ivp_solver.solve_decay(T.crisp(5.0), kappa, ctx)
    cooling = ivp_solver.solve_newton_cooling(T.crisp(80.0), T.crisp(20.0), kappa, ctx)
    for offset in (0.0, 0.5, 2.0, 7.0):
        tau = tau0 + offset
        factor = math.exp(-kappa * offset ** alpha / alpha)
        value = decay(tau)
        assert value.is_crisp()
        assert value.peak == pytest.approx(5.0 * factor, rel=1e-12)
        value = cooling(tau)
        assert value.is_crisp()
        assert value.peak == pytest.approx(20.0 + 60.0 * factor, rel=1e-12)


@pytest.mark.parametrize("tau0", [0.0, 0.7])
def test_alpha_one_gives_classical_exponentials(tau0):
    """α = 1: e^{-κ(τ-τ0)}"""
    ctx = ConformableContext(1.0, tau0)
    kappa = 0.25
    w0 = T(3.97, 4.3, 5.1)
    decay = ivp_solver.solve_decay(w0, kappa, ctx)
    cooling = ivp_solver.solve_newton_cooling(T(59.1, 70.0, 80.6), AMBIENT, kappa, ctx)
    difference = (52.3, 63.0, 72.75)
    for offset in (0.0, 0.3, 1.0, 4.0):
        tau = tau0 + offset
        factor = math.exp(-kappa * (tau - tau0))
        expected = tuple(w * factor for w in w0.as_tuple())
        assert decay(tau).as_tuple() == pytest.approx(expected, rel=1e-12)
        expected = tuple(m + d * factor for m, d in zip(AMBIENT.as_tuple(), difference))
        assert cooling(tau).as_tuple() == pytest.approx(expected, rel=1e-12)


def test_width_is_monotone(yogurt_problem, cooling_problem):
    taus = np.linspace(0.0, 20.0, 81)
    growth = ivp_solver.solve(yogurt_problem)
    widths = [growth(float(tau)).width for tau in taus]
    assert all(later >= earlier for earlier, later in zip(widths, widths[1:]))

    cooling = ivp_solver.solve(cooling_problem)
    widths = [cooling(float(tau)).width for tau in taus]
    assert all(later <= earlier for earlier, later in zip(widths, widths[1:]))
    assert widths[-1] > AMBIENT.width


@pytest.mark.parametrize("preset", ["compartment", "cooling"])
def test_decaying_presets_never_switch(preset):
    problem = problem_store.load_problem(problem_store.preset(preset))
    solution = ivp_solver.solve(problem)
    assert find_switching_points(solution.expression, (problem.tau0, problem.tau0 + 50.0)) == []


def test_shifted_decay_never_switches():
    ctx = ConformableContext(0.6, 1.0)
    decay = ivp_solver.solve_decay(T(1.0, 2.0, 4.0), 0.3, ctx)
    assert find_switching_points(decay.expression, (1.0, 40.0)) == []
    cooling = ivp_solver.solve_newton_cooling(T(30.0, 32.0, 35.0), AMBIENT, 0.3, ctx)
    assert find_switching_points(cooling.expression, (1.0, 40.0)) == []
