#!/usr/bin/env python3
"""
main.py - fuzzcal, calcul conformable flou en ligne de commande

Sous-commandes:
  solve         résout un problème (growth / decay / cooling) et tabule la solution
  derive        trace de la dérivée conformable floue (tau,w1,w2,w3,case,reduced_accuracy)
  switchpoints  points de commutation du cas de différentiabilité
  laplace       transformée de Laplace conformable (s,W1,W2,W3)

Codes de sortie: 0 ok, 2 usage / validation, 3 échec mathématique.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import config
from errors import (
    DomainError,
    FuzzcalError,
    InvalidSpecError,
    NoSymbolicFormError,
)
from calculus.conformable import conformable_calculus
from calculus.laplace import conformable_laplace
from calculus.switching import switching_detector
from solver.ivp import ivp_solver
from storage.problem_store import FunctionSpec, problem_store
from storage.trace_store import (
    CORE_FIELDS,
    DERIVATIVE_FIELDS,
    FAN_FIELDS,
    TRANSFORM_FIELDS,
    trace_store,
)
from utils.decorators import timed

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MATH = 3


# Logging avec format stylisé
class ColoredFormatter(logging.Formatter):
    """Formatter avec couleurs pour une meilleure lisibilité"""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'        # Reset
    }

    def __init__(self, *args, use_color: bool = True, **kwargs):
        super().__init__(*args, **kwargs)
        self.use_color = use_color

    def format(self, record):
        record = logging.makeLogRecord(record.__dict__)
        if self.use_color:
            color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
            record.levelname = f"{color}{record.levelname}{self.COLORS['RESET']}"

        formatted = super().format(record)

        # Noms de modules raccourcis
        if '__main__' in formatted:
            formatted = formatted.replace('__main__', 'fuzzcal')
        else:
            for package in ('calculus.', 'fuzzy.', 'solver.', 'storage.', 'utils.'):
                formatted = formatted.replace(package, '', 1)
        return formatted


def setup_logging(verbose: bool = False):
    """Console (stderr, couleurs si terminal) + fichier si FUZZCAL_LOG_FILE"""
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(ColoredFormatter(
        '%(asctime)s │ %(name)-15s │ %(levelname)-8s │ %(message)s',
        datefmt='%H:%M:%S',
        use_color=sys.stderr.isatty()
    ))
    console_handler.setLevel(logging.DEBUG if verbose else logging.WARNING)

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(console_handler)

    if config.log_file is not None:
        # Handler fichier sans couleurs
        file_handler = logging.FileHandler(config.log_file)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s │ %(name)s │ %(levelname)s │ %(message)s',
            datefmt='%H:%M:%S'
        ))
        root_logger.addHandler(file_handler)


logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Arguments
# ----------------------------------------------------------------------

def parse_grid(text: str) -> Tuple[float, float, int]:
    """'start:stop:count' → (start, stop, count)"""
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidSpecError(f"--tau expects start:stop:count, got '{text}'")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidSpecError(f"--tau expects numbers, got '{text}'")
    return start, stop, count


def parse_interval(text: str) -> Tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise InvalidSpecError(f"--interval expects lo:hi, got '{text}'")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise InvalidSpecError(f"--interval expects numbers, got '{text}'")


def parse_s_list(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InvalidSpecError(f"--s expects a comma-separated list of numbers, got '{text}'")
    if not values:
        raise InvalidSpecError("--s is empty")
    return values


def tau_grid(
    args: argparse.Namespace,
    default: Optional[Tuple[float, float]],
    lower: float,
    strict: bool = False
) -> np.ndarray:
    """
    Grille τ validée: count >= 2, start < stop, start >= τ0 (> τ0 si strict)
    """
    if args.tau:
        start, stop, count = parse_grid(args.tau)
    elif default is not None:
        start, stop = default
        count = config.output.tau_count
    else:
        raise InvalidSpecError("No tau grid: pass --tau start:stop:count")
    if count < 2:
        raise InvalidSpecError(f"Grid count must be >= 2, got {count}")
    if not start < stop:
        raise InvalidSpecError(f"Grid needs start < stop, got {start}:{stop}")
    if start < lower or (strict and start == lower):
        bound = ">" if strict else ">="
        raise InvalidSpecError(f"Grid start {start} must be {bound} tau0={lower}")
    return np.linspace(start, stop, count)


def load_spec_document(args: argparse.Namespace) -> Tuple[dict, str]:
    if args.example:
        return problem_store.preset(args.example), args.example
    if args.input.lstrip().startswith("{"):
        return problem_store.load_inline(args.input), "inline"
    return problem_store.load_file(Path(args.input)), Path(args.input).stem


def load_function_spec(args: argparse.Namespace) -> FunctionSpec:
    doc, name = load_spec_document(args)
    return problem_store.load_function(doc, name=name, alpha=args.alpha, basepoint=args.basepoint)


def emit(text: str, out: Optional[str]):
    if out:
        trace_store.write(text, Path(out))
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# Sous-commandes
# ----------------------------------------------------------------------

@timed("solve")
def cmd_solve(args: argparse.Namespace) -> int:
    """Résout le problème et écrit trace (tau,w1,w2,w3) + éventail (tau,r,lo,hi)"""
    doc, name = load_spec_document(args)
    problem = problem_store.load_problem(doc)
    if args.rcuts < 2:
        raise InvalidSpecError(f"--rcuts must be >= 2, got {args.rcuts}")
    default_range = tuple(doc["tau"]) if "tau" in doc else (problem.tau0, problem.tau0 + 1.0)
    taus = tau_grid(args, default_range, problem.tau0)

    solution = ivp_solver.solve(problem)
    core = trace_store.core_rows(solution.trace(taus))
    fan = solution.fan(taus, args.rcuts)
    summary = [f"expression: {solution.describe()}", f"case: {solution.case.label}"]

    if args.format == "json":
        text = trace_store.render_json({
            "problem": problem.to_dict(),
            "expression": solution.describe(),
            "case": solution.case.label,
            "derivation": [step.to_json() for step in solution.derivation],
            "core": trace_store.records(CORE_FIELDS, core),
            "fan": trace_store.records(FAN_FIELDS, fan),
        })
        emit(text, args.out)
        return EXIT_OK

    core_text = trace_store.render_csv(CORE_FIELDS, core, comments=summary)
    fan_text = trace_store.render_csv(FAN_FIELDS, fan)
    if args.out:
        trace_store.write(core_text, Path(args.out))
        trace_store.write(fan_text, trace_store.fan_path(Path(args.out)))
        for line in summary:
            print(line)
    else:
        sys.stdout.write(core_text + "\n" + fan_text)
    return EXIT_OK


@timed("derive")
def cmd_derive(args: argparse.Namespace) -> int:
    """Trace tau,w1,w2,w3,case,reduced_accuracy de la dérivée conformable"""
    spec = load_function_spec(args)
    taus = tau_grid(args, spec.tau_range, spec.ctx.basepoint, strict=True)
    if not (spec.function.contains(taus[0]) and spec.function.contains(taus[-1])):
        raise InvalidSpecError(f"Grid [{taus[0]}, {taus[-1]}] leaves domain {spec.function.domain}")

    trace = conformable_calculus.derivative_trace(spec.function, spec.ctx, taus)
    rows = trace_store.derivative_rows(trace)
    if args.format == "json":
        emit(trace_store.render_json({
            "function": spec.function.describe(),
            "alpha": spec.ctx.alpha,
            "basepoint": spec.ctx.basepoint,
            "derivative": trace_store.records(DERIVATIVE_FIELDS, rows),
        }), args.out)
    else:
        emit(trace_store.render_csv(DERIVATIVE_FIELDS, rows), args.out)
    return EXIT_OK


@timed("switchpoints")
def cmd_switchpoints(args: argparse.Namespace) -> int:
    """Points de commutation dans l'intervalle"""
    spec = load_function_spec(args)
    if args.interval:
        interval = parse_interval(args.interval)
    else:
        interval = spec.interval or spec.tau_range
    if interval is None:
        raise InvalidSpecError("No search interval: pass --interval lo:hi")
    lo, hi = interval
    if not lo < hi:
        raise InvalidSpecError(f"Empty search interval [{lo}, {hi}]")
    if args.grid is not None and args.grid < 2:
        raise InvalidSpecError(f"--grid must be >= 2, got {args.grid}")

    points = switching_detector.detect(spec.function, (lo, hi), args.grid)
    if args.format == "json":
        text = trace_store.render_json({
            "interval": [lo, hi],
            "points": [p.to_json() for p in points],
        })
    elif points:
        text = "".join(f"{trace_store.format_number(p.location)} {p.kind.value}\n" for p in points)
    else:
        text = "none found\n"
    emit(text, args.out)
    return EXIT_OK


@timed("laplace")
def cmd_laplace(args: argparse.Namespace) -> int:
    """Table s,W1,W2,W3 (numérique) + forme symbolique si disponible"""
    spec = load_function_spec(args)
    s_values = parse_s_list(args.s) if args.s else list(spec.s_values)
    if not s_values:
        raise InvalidSpecError("No s values: pass --s LIST")

    values = conformable_laplace.transform_trace(spec.function, spec.ctx, s_values, method=args.method)
    rows = trace_store.transform_rows(values)
    try:
        symbolic = conformable_laplace.laplace_symbolic(spec.function, spec.ctx).describe()
    except NoSymbolicFormError as e:
        logger.debug(f"No symbolic form: {e}")
        symbolic = None

    if args.format == "json":
        emit(trace_store.render_json({
            "function": spec.function.describe(),
            "alpha": spec.ctx.alpha,
            "basepoint": spec.ctx.basepoint,
            "transform": trace_store.records(TRANSFORM_FIELDS, rows),
            "symbolic": symbolic,
        }), args.out)
    else:
        comments = [f"symbolic: {symbolic}"] if symbolic else []
        emit(trace_store.render_csv(TRANSFORM_FIELDS, rows, comments=comments), args.out)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "derive": cmd_derive,
    "switchpoints": cmd_switchpoints,
    "laplace": cmd_laplace,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzcal", description="fuzzcal - Calcul conformable flou")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--example", help=f"Preset ({', '.join(problem_store.names())})")
    source.add_argument("--input", help="Fichier JSON ou document JSON en ligne (problème ou fonction)")
    common.add_argument("--tau", help="Grille start:stop:count")
    common.add_argument("--format", choices=["csv", "json"], default="csv", help="Format de sortie")
    common.add_argument("--out", help="Fichier de sortie (défaut: stdout)")
    common.add_argument("--alpha", type=float, help="Surcharge de l'ordre α")
    common.add_argument("--basepoint", type=float, help="Surcharge du point base")
    common.add_argument("--verbose", action="store_true", help="Logs détaillés (DEBUG)")

    solve = subparsers.add_parser("solve", parents=[common], help="Résout un problème de Cauchy flou")
    solve.add_argument("--rcuts", type=int, default=config.output.rcuts, help="Nombre de niveaux r")

    subparsers.add_parser("derive", parents=[common], help="Trace de la dérivée conformable")

    switch = subparsers.add_parser("switchpoints", parents=[common], help="Points de commutation")
    switch.add_argument("--interval", help="Intervalle lo:hi")
    switch.add_argument("--grid", type=int, help="Points de balayage")

    laplace = subparsers.add_parser("laplace", parents=[common], help="Transformée de Laplace conformable")
    laplace.add_argument("--s", help="Liste de s séparés par des virgules")
    laplace.add_argument("--method", choices=["substitution", "direct"], default="substitution",
                         help="Chemin de quadrature")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    try:
        return COMMANDS[args.command](args)
    except (InvalidSpecError, DomainError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except FuzzcalError as e:
        tau = getattr(e, "tau", None)
        where = f" (first offending tau={tau!r})" if tau is not None else ""
        logger.error(f"{args.command}: {type(e).__name__}: {e}{where}")
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
