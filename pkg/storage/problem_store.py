"""
storage/problem_store.py - Problèmes et fonctions: presets et documents JSON

Documents acceptés:
- problème: {template, kappa, alpha, tau0, w0: [a,b,c], ambient?: [a,b,c]}
- fonction: {function: {kind, ...}, alpha, basepoint?, domain?}

Vocabulaire fermé des formes de fonction:
- constant         {value: [a,b,c]}
- sines            {amplitudes: [a,b,c], frequency?}
- sin              {value: [a,b,c], frequency?}
- conformable_exp  {value: [a,b,c], rate}
- affine           {terms: [forme, ...]}

Clés optionnelles communes: tau [start, stop], derive_tau, interval [lo, hi], s [...].
"""
import copy
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from errors import FuzzcalError, InvalidSpecError
from fuzzy.functions import FormTerm, FuzzyFunction
from fuzzy.numbers import TriangularFuzzyNumber
from calculus.conformable import ConformableContext
from solver.ivp import ClosedFormSolution, LinearFCFIVP, ivp_solver

logger = logging.getLogger(__name__)


PRESETS: Dict[str, Dict[str, Any]] = {
    # Pot de yaourt: croissance bactérienne
    "yogurt": {
        "template": "growth",
        "kappa": 1 / 30,
        "alpha": 1 / 5,
        "tau0": 0.0,
        "w0": [516.0, 540.0, 598.0],
        "tau": [0.0, 1.0],
        "derive_tau": [0.1, 1.0],
        "interval": [0.0, 1.0],
        "s": [1.0, 2.0, 5.0],
    },
    # Modèle à un compartiment: élimination
    "compartment": {
        "template": "decay",
        "kappa": 0.5,
        "alpha": 0.5,
        "tau0": 0.0,
        "w0": [3.97, 4.3, 5.1],
        "tau": [0.0, 1.0],
        "derive_tau": [0.1, 1.0],
        "interval": [0.0, 1.0],
        "s": [1.0, 2.0, 5.0],
    },
    # Loi de refroidissement de Newton
    "cooling": {
        "template": "cooling",
        "kappa": 1 / 20,
        "alpha": 0.5,
        "tau0": 0.0,
        "w0": [59.1, 70.0, 80.6],
        "ambient": [6.8, 7.0, 7.85],
        "tau": [0.0, 1.0],
        "derive_tau": [0.1, 1.0],
        "interval": [0.0, 1.0],
        "s": [1.0, 2.0, 5.0],
    },
    "sines": {
        "function": {"kind": "sines", "amplitudes": [2.3, 5.6, 9.7]},
        "alpha": 0.5,
        "basepoint": 0.0,
        "domain": [0.0, math.pi],
        "tau": [0.01, math.pi - 0.01],
        "interval": [0.0, math.pi],
    },
    "constant": {
        "function": {"kind": "constant", "value": [1.0, 2.0, 3.0]},
        "alpha": 0.5,
        "basepoint": 0.0,
        "tau": [0.1, 1.0],
        "interval": [0.0, 1.0],
        "s": [1.0, 2.0, 5.0],
    },
    # Diamètre 4 + 2 sin τ: commutations en π/2 (I) et 3π/2 (II)
    "two-switch": {
        "function": {
            "kind": "affine",
            "terms": [
                {"kind": "constant", "value": [-2.0, 0.0, 2.0]},
                {"kind": "sin", "value": [0.0, 1.0, 2.0]},
            ],
        },
        "alpha": 0.5,
        "basepoint": 0.0,
        "domain": [0.0, 2 * math.pi],
        "tau": [0.01, 2 * math.pi - 0.01],
        "interval": [0.0, 2 * math.pi],
    },
}


@dataclass(frozen=True)
class FunctionSpec:
    """Fonction chargée avec son contexte et ses grilles par défaut"""
    function: FuzzyFunction
    ctx: ConformableContext
    name: str = ""
    tau_range: Optional[Tuple[float, float]] = None
    interval: Optional[Tuple[float, float]] = None
    s_values: Tuple[float, ...] = ()
    problem: Optional[LinearFCFIVP] = None
    solution: Optional[ClosedFormSolution] = None


def _pair(doc: Dict[str, Any], key: str) -> Optional[Tuple[float, float]]:
    raw = doc.get(key)
    if raw is None:
        return None
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise InvalidSpecError(f"'{key}' must be [start, stop]")
    try:
        return (float(raw[0]), float(raw[1]))
    except (TypeError, ValueError):
        raise InvalidSpecError(f"'{key}' must hold numbers, got {raw!r}")


class ProblemStore:
    """
    Chargement des presets et des documents JSON

    Les presets sont copiés à chaque accès (documents immuables pour
    l'appelant).
    """

    def __init__(self):
        self.presets = PRESETS

    def names(self) -> List[str]:
        return sorted(self.presets)

    def preset(self, name: str) -> Dict[str, Any]:
        if name not in self.presets:
            raise InvalidSpecError(f"Unknown example '{name}' (choose from {', '.join(self.names())})")
        return copy.deepcopy(self.presets[name])

    def load_file(self, path: Path) -> Dict[str, Any]:
        """Lit un document JSON"""
        try:
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
        except (IOError, OSError) as e:
            raise InvalidSpecError(f"Cannot read {path}: {e}")
        except json.JSONDecodeError as e:
            raise InvalidSpecError(f"Invalid JSON in {path}: {e}")
        if not isinstance(doc, dict):
            raise InvalidSpecError(f"{path} must hold a JSON object")
        return doc

    def load_inline(self, text: str) -> Dict[str, Any]:
        """Document JSON passé directement en argument"""
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidSpecError(f"Invalid inline JSON: {e}")
        if not isinstance(doc, dict):
            raise InvalidSpecError("Inline spec must be a JSON object")
        return doc

    @staticmethod
    def is_problem(doc: Dict[str, Any]) -> bool:
        return "template" in doc

    def load_problem(self, doc: Dict[str, Any]) -> LinearFCFIVP:
        if not self.is_problem(doc):
            raise InvalidSpecError("Not a problem spec (missing 'template')")
        return LinearFCFIVP.from_dict(doc)

    def _context(self, doc: Dict[str, Any], alpha: Optional[float], basepoint: Optional[float]) -> ConformableContext:
        try:
            a = float(doc.get("alpha", 1.0)) if alpha is None else float(alpha)
            b = float(doc.get("basepoint", 0.0)) if basepoint is None else float(basepoint)
        except (TypeError, ValueError) as e:
            raise InvalidSpecError(f"Invalid alpha/basepoint: {e}")
        return ConformableContext(alpha=a, basepoint=b)

    def _terms(self, form: Dict[str, Any], ctx: ConformableContext) -> List[FormTerm]:
        if not isinstance(form, dict) or "kind" not in form:
            raise InvalidSpecError(f"Function form needs a 'kind', got {form!r}")
        kind = form["kind"]
        if kind == "affine":
            terms = form.get("terms")
            if not isinstance(terms, list) or not terms:
                raise InvalidSpecError("'affine' needs a non-empty 'terms' list")
            return [t for sub in terms for t in self._terms(sub, ctx)]
        if kind == "constant":
            return [FormTerm("constant", TriangularFuzzyNumber.from_json(form.get("value")))]
        if kind in ("sines", "sin"):
            values = form.get("amplitudes", form.get("value"))
            frequency = float(form.get("frequency", 1.0))
            return [FormTerm("sin", TriangularFuzzyNumber.from_json(values), rate=frequency)]
        if kind == "conformable_exp":
            if "rate" not in form:
                raise InvalidSpecError("'conformable_exp' needs a 'rate'")
            return [FormTerm(
                "conformable_exp", TriangularFuzzyNumber.from_json(form.get("value")),
                rate=float(form["rate"]), alpha=ctx.alpha, basepoint=ctx.basepoint
            )]
        raise InvalidSpecError(f"Unknown function kind '{kind}'")

    def load_function(
        self,
        doc: Dict[str, Any],
        name: str = "",
        alpha: Optional[float] = None,
        basepoint: Optional[float] = None
    ) -> FunctionSpec:
        """
        Charge une fonction floue (ou la solution d'un problème)

        Args:
            doc: document fonction ou problème
            name: nom du preset (pour les traces)
            alpha, basepoint: surcharges du contexte

        Returns:
            FunctionSpec
        """
        s_values = tuple(float(s) for s in doc.get("s", ()))
        if self.is_problem(doc):
            if alpha is not None or basepoint is not None:
                doc = {**doc, **({"alpha": alpha} if alpha is not None else {}),
                       **({"tau0": basepoint} if basepoint is not None else {})}
            problem = self.load_problem(doc)
            solution = ivp_solver.solve(problem)
            return FunctionSpec(
                function=solution.expression,
                ctx=problem.ctx,
                name=name,
                tau_range=_pair(doc, "derive_tau") or _pair(doc, "tau"),
                interval=_pair(doc, "interval"),
                s_values=s_values,
                problem=problem,
                solution=solution,
            )

        if "function" not in doc:
            raise InvalidSpecError("Spec needs either 'template' or 'function'")
        ctx = self._context(doc, alpha, basepoint)
        terms = self._terms(doc["function"], ctx)
        domain = _pair(doc, "domain") or (-math.inf, math.inf)
        try:
            function = FuzzyFunction.from_terms(terms, domain, label=name)
        except FuzzcalError as e:
            raise InvalidSpecError(f"Invalid function: {e}")
        return FunctionSpec(
            function=function,
            ctx=ctx,
            name=name,
            tau_range=_pair(doc, "derive_tau") or _pair(doc, "tau"),
            interval=_pair(doc, "interval"),
            s_values=s_values,
        )


# Instance singleton
problem_store = ProblemStore()
