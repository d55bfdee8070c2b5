"""
test_cli.py - Interface en ligne de commande (processus séparé)

Sorties CSV/JSON, codes de sortie, déterminisme et références golden.
"""
import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from oracle.verify import oracle_exponential
from fuzzy.numbers import TriangularFuzzyNumber
from config import config
from storage.golden_store import GoldenStatus, GoldenStore, golden_store
from storage.trace_store import RCUT_FIELDS, trace_store

ROOT = Path(__file__).parent
KAPPA = 1 / 30
W0 = (516.0, 540.0, 598.0)


def run_cli(*args: str) -> subprocess.CompletedProcess:
    cmd = [sys.executable, str(ROOT / "main.py"), *args]
    return subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)


def parse_table(text: str):
    """Lignes de données (commentaires '#' retirés) et commentaires"""
    lines = [line for line in text.splitlines() if line.strip()]
    comments = [line[2:] for line in lines if line.startswith("# ")]
    data = [line for line in lines if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(data)))), comments


def split_solve_output(stdout: str):
    core, fan = stdout.split("\n\n", 1)
    return parse_table(core), parse_table(fan)[0]


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0, cp.stderr
    for command in ("solve", "derive", "switchpoints", "laplace"):
        assert command in cp.stdout


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------

def test_solve_yogurt_csv():
    cp = run_cli("solve", "--example", "yogurt", "--tau", "0:1:5")
    assert cp.returncode == 0, cp.stderr
    (core, comments), fan = split_solve_output(cp.stdout)

    assert [float(row["tau"]) for row in core] == [0.0, 0.25, 0.5, 0.75, 1.0]
    for row in core:
        expected = oracle_exponential(W0, KAPPA, 0.2, 0.0, float(row["tau"]))
        for key, value in zip(("w1", "w2", "w3"), expected):
            assert float(row[key]) == pytest.approx(value, rel=1e-10)
    assert any(c.startswith("expression:") and "516" in c for c in comments)
    assert "case: CaseI" in comments
    assert len(fan) == 5 * 11


def test_solve_cooling_json():
    cp = run_cli("solve", "--example", "cooling", "--format", "json")
    assert cp.returncode == 0, cp.stderr
    doc = json.loads(cp.stdout)
    assert doc["case"] == "CaseII"
    assert "52.3" in doc["expression"]
    assert [step["step"] for step in doc["derivation"]] == ["i", "ii", "iii", "iv"]
    assert doc["core"][0] == {"tau": 0.0, "w1": 59.1, "w2": 70.0, "w3": 80.6}


def test_solve_fan_is_nested():
    cp = run_cli("solve", "--example", "cooling", "--format", "json", "--rcuts", "6")
    assert cp.returncode == 0, cp.stderr
    fan = json.loads(cp.stdout)["fan"]
    by_tau = {}
    for row in fan:
        by_tau.setdefault(row["tau"], []).append(row)
    for rows in by_tau.values():
        assert [row["r"] for row in rows] == sorted(row["r"] for row in rows)
        for lower, upper in zip(rows, rows[1:]):
            assert lower["lo"] <= upper["lo"] <= upper["hi"] <= lower["hi"]


def test_solve_writes_files(tmp_path: Path):
    out = tmp_path / "yogurt.csv"
    cp = run_cli("solve", "--example", "yogurt", "--tau", "0:1:3", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    assert "expression:" in cp.stdout
    assert out.exists()
    assert (tmp_path / "yogurt_fan.csv").exists()
    assert out.read_text().splitlines()[0] == "tau,w1,w2,w3"


def test_solve_from_input_file(tmp_path: Path):
    spec = tmp_path / "decay.json"
    spec.write_text(json.dumps({"template": "decay", "kappa": 0.5, "alpha": 0.5, "w0": [1, 2, 3]}))
    cp = run_cli("solve", "--input", str(spec), "--tau", "0:4:3")
    assert cp.returncode == 0, cp.stderr
    (core, comments), _ = split_solve_output(cp.stdout)
    # u = 2√τ: τ=4 donne e^{-2}
    assert float(core[-1]["w3"]) == pytest.approx(3 * math.exp(-2.0), rel=1e-10)
    assert "case: CaseII" in comments


@pytest.mark.parametrize("args", [
    ("solve", "--example", "yogurt", "--tau", "0:1:1"),
    ("solve", "--example", "yogurt", "--tau", "1:0:5"),
    ("solve", "--example", "yogurt", "--tau", "a:b:c"),
    ("solve", "--example", "yogurt", "--rcuts", "1"),
    ("solve", "--example", "sines"),
])
def test_solve_usage_errors(args):
    cp = run_cli(*args)
    assert cp.returncode == 2
    assert cp.stdout == ""


def test_inline_function_document():
    doc = json.dumps({"function": {"kind": "constant", "value": [1, 2, 3]}, "alpha": 0.5})
    cp = run_cli("laplace", "--input", doc, "--s", "4")
    assert cp.returncode == 0, cp.stderr
    rows, _ = parse_table(cp.stdout)
    assert [float(rows[0][k]) for k in ("W1", "W2", "W3")] == pytest.approx([0.25, 0.5, 0.75], rel=1e-10)

    bad = run_cli("laplace", "--input", "{not json", "--s", "4")
    assert bad.returncode == 2


def test_solve_missing_file(tmp_path: Path):
    cp = run_cli("solve", "--input", str(tmp_path / "absent.json"))
    assert cp.returncode == 2


# ----------------------------------------------------------------------
# derive
# ----------------------------------------------------------------------

def test_derive_sines_flips_case_once():
    cp = run_cli("derive", "--example", "sines")
    assert cp.returncode == 0, cp.stderr
    rows, _ = parse_table(cp.stdout)
    cases = [row["case"] for row in rows]
    assert cases[0] == "CaseI" and cases[-1] == "CaseII"
    flips = [(a, b) for a, b in zip(cases, cases[1:]) if a != b]
    assert flips == [("CaseI", "CaseII")]


def test_derive_yogurt_is_rate_times_solution():
    cp = run_cli("derive", "--example", "yogurt", "--tau", "0.1:1:4")
    assert cp.returncode == 0, cp.stderr
    rows, _ = parse_table(cp.stdout)
    for row in rows:
        expected = oracle_exponential(W0, KAPPA, 0.2, 0.0, float(row["tau"]))
        for key, value in zip(("w1", "w2", "w3"), expected):
            assert float(row[key]) == pytest.approx(KAPPA * value, rel=1e-6)
        assert row["case"] == "CaseI"


def test_derive_constant_is_zero():
    cp = run_cli("derive", "--example", "constant", "--format", "json")
    assert cp.returncode == 0, cp.stderr
    rows = json.loads(cp.stdout)["derivative"]
    assert len(rows) == 11
    for row in rows:
        assert (row["w1"], row["w2"], row["w3"]) == (0.0, 0.0, 0.0)
        assert row["case"] == "CaseI"


def test_derive_rejects_basepoint_start():
    cp = run_cli("derive", "--example", "yogurt", "--tau", "0:1:4")
    assert cp.returncode == 2


def test_derive_flags_one_sided_edge_rows():
    cp = run_cli("derive", "--example", "sines", "--tau", f"1:{math.pi!r}:3")
    assert cp.returncode == 0, cp.stderr
    rows, _ = parse_table(cp.stdout)
    assert [row["reduced_accuracy"] for row in rows] == ["0", "0", "1"]
    assert rows[-1]["case"] == "CaseII"

    doc = json.loads(run_cli("derive", "--example", "sines", "--tau", f"1:{math.pi!r}:3", "--format", "json").stdout)
    assert [row["reduced_accuracy"] for row in doc["derivative"]] == [False, False, True]


# ----------------------------------------------------------------------
# switchpoints
# ----------------------------------------------------------------------

def test_switchpoints_sines():
    cp = run_cli("switchpoints", "--example", "sines")
    assert cp.returncode == 0, cp.stderr
    lines = cp.stdout.splitlines()
    assert len(lines) == 1
    location, kind = lines[0].split()
    assert kind == "TypeI"
    assert float(location) == pytest.approx(math.pi / 2, abs=1e-8)


def test_switchpoints_two_switch_json():
    cp = run_cli("switchpoints", "--example", "two-switch", "--format", "json")
    assert cp.returncode == 0, cp.stderr
    points = json.loads(cp.stdout)["points"]
    assert [p["kind"] for p in points] == ["TypeI", "TypeII"]
    assert points[0]["location"] == pytest.approx(math.pi / 2, abs=1e-8)
    assert points[1]["location"] == pytest.approx(3 * math.pi / 2, abs=1e-8)


def test_switchpoints_none_found():
    cp = run_cli("switchpoints", "--example", "yogurt")
    assert cp.returncode == 0, cp.stderr
    assert cp.stdout == "none found\n"


def test_switchpoints_empty_interval():
    cp = run_cli("switchpoints", "--example", "sines", "--interval", "1:1")
    assert cp.returncode == 2


# ----------------------------------------------------------------------
# laplace
# ----------------------------------------------------------------------

def test_laplace_constant():
    cp = run_cli("laplace", "--example", "constant", "--s", "2")
    assert cp.returncode == 0, cp.stderr
    rows, comments = parse_table(cp.stdout)
    assert len(rows) == 1
    values = [float(rows[0][key]) for key in ("W1", "W2", "W3")]
    assert values == pytest.approx([0.5, 1.0, 1.5], rel=1e-10)
    assert any(c.startswith("symbolic:") for c in comments)


def test_laplace_yogurt():
    cp = run_cli("laplace", "--example", "yogurt", "--s", "1")
    assert cp.returncode == 0, cp.stderr
    rows, comments = parse_table(cp.stdout)
    values = [float(rows[0][key]) for key in ("W1", "W2", "W3")]
    assert values == pytest.approx([w / (1 - KAPPA) for w in W0], rel=1e-8)
    assert any(c.startswith("symbolic:") for c in comments)


def test_laplace_direct_method():
    cp = run_cli("laplace", "--example", "constant", "--s", "1,3", "--method", "direct", "--format", "json")
    assert cp.returncode == 0, cp.stderr
    transform = json.loads(cp.stdout)["transform"]
    assert [row["s"] for row in transform] == [1.0, 3.0]
    assert transform[1]["W3"] == pytest.approx(1.0, rel=1e-8)


def test_laplace_below_abscissa():
    cp = run_cli("laplace", "--example", "yogurt", "--s", "0.01")
    assert cp.returncode == 3
    assert "DivergentTransformError" in cp.stderr


def test_laplace_rejects_bad_s_list():
    cp = run_cli("laplace", "--example", "constant", "--s", "two")
    assert cp.returncode == 2


# ----------------------------------------------------------------------
# Déterminisme et références
# ----------------------------------------------------------------------

def test_output_is_deterministic():
    first = run_cli("solve", "--example", "compartment")
    second = run_cli("solve", "--example", "compartment")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


GOLDEN_CASES = [
    ("switchpoints", "--example", "yogurt"),
    ("switchpoints", "--example", "compartment"),
    ("switchpoints", "--example", "cooling"),
    ("switchpoints", "--example", "constant"),
    ("switchpoints", "--example", "yogurt", "--format", "json"),
    ("derive", "--example", "constant", "--tau", "0.25:1:4"),
    ("derive", "--example", "constant", "--tau", "0.25:1:4", "--format", "json"),
]


def golden_key(args) -> str:
    return "_".join(a.lstrip("-") for a in args) + ".txt"


@pytest.mark.parametrize("args", GOLDEN_CASES)
def test_golden_outputs(args, tmp_path: Path):
    """Sortie identique octet par octet au fichier versionné dans golden/"""
    cp = run_cli(*args)
    assert cp.returncode == 0, cp.stderr
    key = golden_key(args)

    # FUZZCAL_RECORD_GOLDEN=1: écrit dans tmp_path, à recopier à la main dans golden/
    if config.output.record_golden:
        path = GoldenStore(golden_dir=tmp_path, record=True).record(key, cp.stdout)
        pytest.skip(f"recorded {path}")

    check = golden_store.compare(key, cp.stdout)
    if check.status is GoldenStatus.MISSING:
        pytest.fail(f"no committed golden file {check.path}")
    assert check.status is GoldenStatus.MATCH, check.detail


def test_golden_directory_is_committed():
    assert all(golden_store.exists(golden_key(args)) for args in GOLDEN_CASES)
    assert len(list(golden_store.golden_dir.glob("*.txt"))) == len(GOLDEN_CASES)


def test_golden_store_compare(tmp_path: Path):
    store = GoldenStore(golden_dir=tmp_path / "golden", record=False)
    assert store.compare("a/b.txt", "x\n").status is GoldenStatus.MISSING
    path = store.record("a/b.txt", "x\ny\n")
    assert path.name == "a_b.txt"
    assert store.exists("a/b.txt")
    assert store.compare("a/b.txt", "x\ny\n").status is GoldenStatus.MATCH
    mismatch = store.compare("a/b.txt", "x\nz\n")
    assert mismatch.status is GoldenStatus.MISMATCH
    assert mismatch.detail.startswith("line 2")

    recorder = GoldenStore(golden_dir=tmp_path / "golden", record=True)
    assert recorder.compare("a/b.txt", "new\n").status is GoldenStatus.RECORDED
    assert store.get("a/b.txt") == "new\n"


def test_trace_store_formatting():
    assert trace_store.format_number(-0.0) == "0"
    assert trace_store.format_number(0.1) == "0.10000000000000001"
    assert (trace_store.format_number(True), trace_store.format_number(False)) == ("1", "0")
    rows = trace_store.rcut_rows(TriangularFuzzyNumber(0.0, 1.0, 2.0), 3)
    text = trace_store.render_csv(RCUT_FIELDS, rows, comments=["levels: 3"])
    assert text == "r,lo,hi\n0,0,2\n0.5,0.5,1.5\n1,1,1\n# levels: 3\n"
