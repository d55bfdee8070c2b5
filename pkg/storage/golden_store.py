"""
storage/golden_store.py - Fichiers de référence (golden files)

Stockage texte des sorties CLI des presets pour la non-régression.
- Enregistrement quand config.output.record_golden est actif
- Comparaison octet par octet sinon
- Thread-safe avec locks
"""
import logging
import threading
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config

logger = logging.getLogger(__name__)


class GoldenStatus(Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    RECORDED = "recorded"
    MISSING = "missing"


@dataclass(frozen=True)
class GoldenCheck:
    """Résultat d'une comparaison avec la référence"""
    key: str
    status: GoldenStatus
    path: Path
    detail: str = ""


class GoldenStore:
    """
    Références texte des sorties presets

    Un fichier par clé, nommé d'après la clé assainie.
    """

    def __init__(self, golden_dir: Optional[Path] = None, record: Optional[bool] = None):
        self.golden_dir = Path(golden_dir or config.golden_dir)
        self.record_mode = config.output.record_golden if record is None else record
        self._lock = threading.Lock()

    def _get_path(self, key: str) -> Path:
        """Génère le chemin du fichier de référence"""
        # Sanitize key pour nom de fichier valide
        safe_key = "".join(c if c.isalnum() or c in "-_." else "_" for c in key)
        return self.golden_dir / safe_key

    def get(self, key: str) -> Optional[str]:
        """Contenu de la référence ou None"""
        path = self._get_path(key)
        with self._lock:
            if not path.exists():
                return None
            try:
                with open(path, "r", newline="", encoding="utf-8") as f:
                    return f.read()
            except IOError as e:
                logger.warning(f"Failed to read golden {key}: {e}")
                return None

    def record(self, key: str, text: str) -> Path:
        """Écrit (ou remplace) la référence"""
        path = self._get_path(key)
        with self._lock:
            self.golden_dir.mkdir(parents=True, exist_ok=True)
            with open(path, "w", newline="", encoding="utf-8") as f:
                f.write(text)
        logger.info(f"Recorded golden {key}")
        return path

    def compare(self, key: str, text: str) -> GoldenCheck:
        """
        Compare le texte à la référence

        En mode enregistrement, la référence est (ré)écrite.
        """
        path = self._get_path(key)
        if self.record_mode:
            self.record(key, text)
            return GoldenCheck(key, GoldenStatus.RECORDED, path)

        expected = self.get(key)
        if expected is None:
            return GoldenCheck(key, GoldenStatus.MISSING, path, "no golden file")
        if expected == text:
            return GoldenCheck(key, GoldenStatus.MATCH, path)

        expected_lines = expected.splitlines()
        actual_lines = text.splitlines()
        for lineno, (want, got) in enumerate(zip(expected_lines, actual_lines), start=1):
            if want != got:
                return GoldenCheck(key, GoldenStatus.MISMATCH, path,
                                   f"line {lineno}: expected {want!r}, got {got!r}")
        return GoldenCheck(key, GoldenStatus.MISMATCH, path,
                           f"{len(expected_lines)} lines expected, got {len(actual_lines)}")

    def exists(self, key: str) -> bool:
        return self._get_path(key).exists()


# Instance singleton
golden_store = GoldenStore()
