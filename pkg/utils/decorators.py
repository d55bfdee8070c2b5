"""
utils/decorators.py - Décorateurs pour gestion erreurs et performance

Patterns implémentés:
- Retry avec raffinement progressif (quadrature adaptative)
- Chronométrage des commandes
"""
import time
import functools
import logging
from typing import Callable, Optional, Tuple, Type

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from errors import IntegrationError

logger = logging.getLogger(__name__)


def retry_with_refinement(
    exceptions: Tuple[Type[Exception], ...] = (IntegrationError,),
    max_retries: Optional[int] = None,
    param: str = "limit",
    initial: Optional[int] = None,
    growth_factor: int = 4,
    on_retry: Optional[Callable] = None
):
    """
    Décorateur retry qui relance avec un paramètre de raffinement plus grand

    Le paramètre (par défaut `limit`, nombre de sous-intervalles de quad)
    est multiplié par growth_factor à chaque échec.

    Args:
        exceptions: Tuple des exceptions à intercepter
        max_retries: Nombre maximum de relances (défaut: quad_max_refinements)
        param: Nom de l'argument mot-clé raffiné
        initial: Valeur initiale (défaut: quad_limit)
        growth_factor: Multiplicateur à chaque relance
        on_retry: Callback optionnel appelé à chaque retry

    Utilisation:
        @retry_with_refinement(exceptions=(IntegrationError,))
        def integrate(f, a, b, limit=200):
            ...
    """
    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            retries = config.numerics.quad_max_refinements if max_retries is None else max_retries
            value = kwargs.pop(param, None)
            if value is None:
                value = config.numerics.quad_limit if initial is None else initial
            last_exception = None

            for attempt in range(retries + 1):
                try:
                    return func(*args, **{**kwargs, param: value})
                except exceptions as e:
                    last_exception = e
                    if attempt < retries:
                        logger.warning(
                            f"[Refine {attempt + 1}/{retries}] "
                            f"{func.__name__} failed: {e}. "
                            f"Retrying with {param}={value * growth_factor}..."
                        )
                        if on_retry:
                            on_retry(attempt, e)
                        value *= growth_factor
                    else:
                        logger.debug(
                            f"{func.__name__} failed after {retries} refinements: {e}"
                        )
            raise last_exception

        return wrapper
    return decorator


def timed(label: Optional[str] = None):
    """
    Journalise la durée d'exécution en DEBUG

    Utilisation:
        @timed("solve")
        def run_solve(args):
            ...
    """
    def decorator(func: Callable):
        name = label or func.__name__

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                logger.debug(f"{name} took {time.perf_counter() - start:.3f}s")

        return wrapper
    return decorator
