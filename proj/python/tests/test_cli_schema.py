import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

ROOT = Path(__file__).resolve().parents[2]
SCHEMA = Path(os.environ.get("VBL_SCHEMA", ROOT / "schemas" / "envelope.schema.json"))
CLI = os.environ.get("VBL_CLI") or shutil.which("vbl")

pytestmark = pytest.mark.skipif(CLI is None, reason="vbl executable not found (set VBL_CLI)")

COMMANDS = [
    ["mean", "--corner"],
    ["mean", "--halfplane-offset", "0:1:0.5"],
    ["table1"],
    ["secrecy", "pmf", "--location", "corner", "--n-max", "5"],
    ["secrecy", "cdf", "--n-max", "3"],
    ["secrecy", "isolation", "--lambda-e", "0.1:10:log"],
    ["simulate", "cell", "--trials", "200"],
    ["simulate", "grid", "--n", "2", "--trials", "50"],
    ["simulate", "degree", "--trials", "200"],
]


def run(args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, check=False)


@pytest.fixture(scope="module")
def validator():
    schema = json.loads(SCHEMA.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_envelope_validates(validator, args):
    res = run(args)
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    validator.validate(doc)
    assert list(doc["rows"][0].keys()) == doc["columns"]


def test_csv_matches_json():
    j = json.loads(run(["secrecy", "pmf", "--location", "edge", "--n-max", "4"]).stdout)
    lines = run(["secrecy", "pmf", "--location", "edge", "--n-max", "4", "--format", "csv"]).stdout.splitlines()
    assert lines[0].split(",") == j["columns"]
    for row, line in zip(j["rows"], lines[1:]):
        cells = line.split(",")
        assert float(cells[4]) == pytest.approx(row["in_pmf"], rel=1e-5)


def test_exit_codes():
    assert run(["mean"]).returncode == 2
    assert run(["secrecy", "pmf", "--location", "nowhere"]).returncode == 2
    assert run(["simulate", "cell", "--at", "20,20"]).returncode == 2


def test_threads_env_does_not_change_output():
    env1 = dict(os.environ, VBL_THREADS="1")
    env8 = dict(os.environ, VBL_THREADS="8")
    args = [CLI, "simulate", "cell", "--trials", "3000", "--rng-seed", "9", "--format", "csv"]
    a = subprocess.run(args, capture_output=True, env=env1, check=True).stdout
    b = subprocess.run(args, capture_output=True, env=env8, check=True).stdout
    assert a == b
