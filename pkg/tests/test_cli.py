import json
import subprocess
import sys

import pytest

from gibbs_algebra.cli import main

from conftest import MODELS

ISING = str(MODELS / "ising_z.json")
FLIP0 = '{"tail": "plus", "overrides": [[[0], 0]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeff_ising_example(capsys):
    code, out, err = run(capsys, "coeff", "--model", ISING, "--left", "plus", "--right", FLIP0)
    assert code == 0
    data = json.loads(out)
    assert data["fertile"] and abs(data["total"] - 1) <= 1e-12
    assert data["entries"][0]["config"] == {"tail": "plus", "overrides": []}
    assert "0.9820137900" in err


def test_coeff_idempotent_pair(capsys):
    code, out, _ = run(capsys, "coeff", "--model", ISING, "--left", FLIP0, "--right", FLIP0)
    entries = json.loads(out)["entries"]
    assert code == 0 and len(entries) == 1 and entries[0]["coefficient"] == 1.0


def test_coeff_macroscopic_pair(capsys):
    code, out, err = run(capsys, "coeff", "--model", ISING, "--left", "plus", "--right", "minus")
    assert code == 0 and json.loads(out)["entries"] == [] and "not fertile" in err


def test_product_with_zero_potential(capsys, tmp_path):
    spec = tmp_path / "zero.json"
    spec.write_text(json.dumps({"version": 1, "lattice": {"kind": "Z"}, "spins": {"q": 2},
                                "potential": {"kind": "zero"}, "clusters": {"kind": "atomic"},
                                "tails": {"zero": {"constant": 0}}}))
    code, out, _ = run(capsys, "product", "--model", str(spec), "--left", "zero",
                       "--right", '{"tail": "zero", "overrides": [[[0], 1], [[1], 1]]}')
    assert code == 0
    assert [t["coeff"] for t in json.loads(out)["terms"]] == [0.25] * 4


def test_product_of_elements(capsys):
    elem = json.dumps({"terms": [{"config": "plus", "coeff": 2.0}, {"config": json.loads(FLIP0), "coeff": -1.0}]})
    code, out, _ = run(capsys, "product", "--model", ISING, "--left", elem, "--right", "plus")
    assert code == 0
    total = sum(t["coeff"] for t in json.loads(out)["terms"])
    assert abs(total - 1.0) <= 1e-12


def test_evo_product(capsys):
    code, out, _ = run(capsys, "evo-product", "--model", ISING, "--left", "plus", FLIP0, "--right", "plus", FLIP0)
    terms = json.loads(out)["terms"]
    assert code == 0 and len(terms) == 4
    assert abs(sum(t["coeff"] for t in terms) - 1.0) <= 1e-12


def test_oracle_compare_finite(capsys):
    code, out, _ = run(capsys, "oracle-compare", "--model", str(MODELS / "ising_chain8.json"), "--samples", "50")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["mode"] == "finite"


def test_oracle_compare_respects_cap(capsys, monkeypatch):
    monkeypatch.setenv("GGA_ENUM_CAP", "16")
    code, _, err = run(capsys, "oracle-compare", "--model", str(MODELS / "ising_chain8.json"))
    assert code == 1 and "TooLarge" in err


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--model", ISING, "--configs", str(MODELS / "embed_configs.json"))
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["enlarged"]) == 8


def test_verify_pass_and_fail(capsys):
    code, out, err = run(capsys, "verify", "markov", "--model", ISING, "--samples", "30")
    assert code == 0 and json.loads(out)["passed"] and "PASS" in err
    code, out, _ = run(capsys, "verify", "nonassoc", "--model", ISING)
    assert code == 1 and not json.loads(out)["passed"]


def test_verify_is_deterministic(capsys):
    bodies = []
    for _ in range(2):
        _, out, _ = run(capsys, "verify", "tau-iso", "--model", ISING, "--seed", "7", "--samples", "20")
        data = json.loads(out)
        data.pop("duration_seconds")
        bodies.append(json.dumps(data, sort_keys=True))
    assert bodies[0] == bodies[1]


@pytest.mark.parametrize("argv", [
    ["verify", "nope", "--model", ISING],
    ["verify", "markov", "--model", "missing.json"],
    ["coeff", "--model", ISING, "--left", "plus"],
    ["coeff", "--model", ISING, "--left", "{bad", "--right", "plus"],
    ["coeff", "--model", ISING, "--left", "nosuchtail", "--right", "plus"],
    ["verify", "markov", "--model", ISING, "--samples", "0"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2


def test_suite_refusal_exits_1(capsys):
    code, _, err = run(capsys, "verify", "embed-finite", "--model", str(MODELS / "star.json"))
    assert code == 1 and "InfiniteRange" in err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "gibbs_algebra.cli", "verify", "counterexample",
                           "--model", str(MODELS / "star.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["suite"] == "counterexample" and data["passed"]
    assert "counterexample" in proc.stderr
