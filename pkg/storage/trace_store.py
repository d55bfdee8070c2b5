"""
storage/trace_store.py - Export des tables (CSV / JSON)

Tables produites:
- trace de solution:   tau,w1,w2,w3
- éventail r-coupes:   tau,r,lo,hi
- trace de dérivée:    tau,w1,w2,w3,case,reduced_accuracy
- transformée:         s,W1,W2,W3
- r-coupes d'un nombre: r,lo,hi

Format numérique: 17 chiffres significatifs, séparateur '.', fins de ligne LF.
Sortie déterministe (aucun horodatage).
"""
import csv
import io
import json
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import config
from fuzzy.numbers import GHDiffResult, TriangularFuzzyNumber, r_cut_table

logger = logging.getLogger(__name__)

CORE_FIELDS = ["tau", "w1", "w2", "w3"]
FAN_FIELDS = ["tau", "r", "lo", "hi"]
DERIVATIVE_FIELDS = ["tau", "w1", "w2", "w3", "case", "reduced_accuracy"]
TRANSFORM_FIELDS = ["s", "W1", "W2", "W3"]
RCUT_FIELDS = ["r", "lo", "hi"]


class TraceStore:
    """
    Mise en forme et écriture des tables de résultats

    Les lignes sont des séquences de nombres (chaînes pour la colonne
    case, booléens 0/1 en CSV pour reduced_accuracy), dans l'ordre des
    colonnes.
    """

    def __init__(self, digits: Optional[int] = None):
        self.digits = digits or config.output.significant_digits

    def format_number(self, value: Any) -> str:
        """Nombre en notation g à `digits` chiffres (-0 normalisé en 0)"""
        if isinstance(value, str):
            return value
        if isinstance(value, bool):
            return "1" if value else "0"
        return format(float(value) + 0.0, f".{self.digits}g")

    # ------------------------------------------------------------------
    # Construction des lignes
    # ------------------------------------------------------------------

    @staticmethod
    def core_rows(trace: Iterable[Tuple[float, TriangularFuzzyNumber]]) -> List[Tuple]:
        return [(tau, *value.as_tuple()) for tau, value in trace]

    @staticmethod
    def derivative_rows(trace: Iterable[Tuple[float, GHDiffResult]]) -> List[Tuple]:
        # reduced_accuracy: différence unilatérale au bord du domaine
        return [
            (tau, *result.value.as_tuple(), result.case.label, result.reduced_accuracy)
            for tau, result in trace
        ]

    @staticmethod
    def transform_rows(values: Iterable[Any]) -> List[Tuple]:
        return [value.row() for value in values]

    @staticmethod
    def rcut_rows(p: TriangularFuzzyNumber, levels: int) -> List[Tuple]:
        return [(cut.level, cut.lo, cut.hi) for cut in r_cut_table(p, levels)]

    # ------------------------------------------------------------------
    # Rendu
    # ------------------------------------------------------------------

    def render_csv(
        self,
        fieldnames: Sequence[str],
        rows: Iterable[Sequence[Any]],
        comments: Sequence[str] = ()
    ) -> str:
        """Table CSV, lignes de commentaire '# ...' en fin de fichier"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([self.format_number(v) for v in row])
        for comment in comments:
            buffer.write(f"# {comment}\n")
        return buffer.getvalue()

    def records(self, fieldnames: Sequence[str], rows: Iterable[Sequence[Any]]) -> List[Dict[str, Any]]:
        """Lignes sous forme de dictionnaires pour le JSON"""
        out = []
        for row in rows:
            out.append({
                name: (value if isinstance(value, (str, bool)) else float(value) + 0.0)
                for name, value in zip(fieldnames, row)
            })
        return out

    @staticmethod
    def render_json(doc: Any) -> str:
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    # ------------------------------------------------------------------
    # Écriture
    # ------------------------------------------------------------------

    @staticmethod
    def write(text: str, path: Path) -> Path:
        """
        Écrit le texte tel quel (LF conservés)

        Returns:
            Chemin du fichier créé
        """
        path = Path(path)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Exported {text.count(chr(10))} lines to {path}")
        return path

    @staticmethod
    def fan_path(path: Path) -> Path:
        """<stem>_fan<suffix> à côté de la trace principale"""
        path = Path(path)
        return path.with_name(f"{path.stem}_fan{path.suffix}")


# Instance singleton
trace_store = TraceStore()
