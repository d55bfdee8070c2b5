"""
config.py - Configuration centralisée pour fuzzcal

Regroupe les tolérances numériques de chaque couche:
1. Arithmétique floue (tolérances d'égalité)
2. Calcul conforme (pas de différences finies, quadrature)
3. Transformée de Laplace conforme (troncature, borne exponentielle)
4. Solveur et sorties CLI (grilles, format CSV)

Chaque valeur peut être surchargée par une variable d'environnement FUZZCAL_*.
"""
import os
from dataclasses import dataclass, field
from typing import Optional, Tuple
from pathlib import Path

# Charger variables d'environnement
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv optionnel


def _env_float(name: str, default: float) -> float:
    """Lit un float depuis l'environnement (défaut si absent ou vide)"""
    raw = os.getenv(name, "")
    return float(raw) if raw.strip() else default


def _env_int(name: str, default: int) -> int:
    """Lit un entier depuis l'environnement"""
    raw = os.getenv(name, "")
    return int(raw) if raw.strip() else default


@dataclass(frozen=True)
class NumericsConfig:
    """Tolérances de base: différences finies, classement des cas, quadrature"""
    # Pas relatif des différences centrées: h = diff_step * max(1, |τ|)
    diff_step: float = field(default_factory=lambda: _env_float("FUZZCAL_DIFF_STEP", 1e-6))
    # Comparaison des dérivées de composantes (cas I / cas II)
    case_tol: float = field(default_factory=lambda: _env_float("FUZZCAL_CASE_TOL", 1e-9))
    # Égalité flottante, mise à l'échelle par la magnitude
    equality_tol: float = 1e-12
    # Près du point de base, h <= fraction * (τ - a)
    basepoint_step_fraction: float = 1e-4
    # scipy.integrate.quad
    quad_epsrel: float = field(default_factory=lambda: _env_float("FUZZCAL_QUAD_EPSREL", 1e-9))
    quad_epsabs: float = 0.0
    quad_limit: int = field(default_factory=lambda: _env_int("FUZZCAL_QUAD_LIMIT", 200))
    quad_max_refinements: int = 2


@dataclass(frozen=True)
class SwitchingConfig:
    """Recherche des points de changement de différentiabilité"""
    grid_n: int = field(default_factory=lambda: _env_int("FUZZCAL_SWITCH_GRID", 1024))
    rel_xtol: float = 1e-9  # tolérance de bissection relative à (hi - lo)


@dataclass(frozen=True)
class LaplaceConfig:
    """Transformée de Laplace conforme"""
    truncation_eps: float = 1e-12     # enveloppe M e^{(c-s)u} < eps
    tail: Tuple[float, float] = (10.0, 1000.0)
    tail_grid_n: int = 64
    bound_inflation: float = 1.05     # M̂ gonflé pour couvrir tous les points
    probe_offset: float = 1.0         # s de contrôle = abscisse + offset


@dataclass(frozen=True)
class SolverConfig:
    """Solveur des problèmes à valeur initiale"""
    validation_grid_n: int = 16       # contrôle a posteriori du cas
    validation_span: float = 1.0
    residual_grid_n: int = 200
    residual_rtol: float = 1e-6


@dataclass(frozen=True)
class OracleConfig:
    """Oracles de vérification (indépendants du chemin principal)"""
    levels: int = 64
    quad_tol: float = 1e-10
    richardson_levels: int = 4


@dataclass(frozen=True)
class OutputConfig:
    """Format des sorties CLI"""
    significant_digits: int = 17
    tau_count: int = 11
    rcuts: int = 11
    # FUZZCAL_RECORD_GOLDEN=1: les tests écrivent les références dans un répertoire temporaire
    record_golden: bool = field(default_factory=lambda: os.getenv("FUZZCAL_RECORD_GOLDEN", "") == "1")


@dataclass
class Config:
    """Configuration principale fuzzcal"""

    # === SOUS-CONFIGURATIONS ===
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    switching: SwitchingConfig = field(default_factory=SwitchingConfig)
    laplace: LaplaceConfig = field(default_factory=LaplaceConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    # === CHEMINS ===
    base_dir: Path = field(default_factory=lambda: Path(__file__).parent)

    @property
    def golden_dir(self) -> Path:
        return Path(os.getenv("FUZZCAL_GOLDEN_DIR", "") or self.base_dir / "golden")

    @property
    def log_file(self) -> Optional[Path]:
        """Journal fichier optionnel (FUZZCAL_LOG_FILE)"""
        raw = os.getenv("FUZZCAL_LOG_FILE", "")
        return Path(raw) if raw.strip() else None


# Instance globale
config = Config()
