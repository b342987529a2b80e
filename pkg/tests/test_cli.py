import json
import subprocess
import sys

import pytest

from schubpatch.cli import main, sweep


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_ideal_json(capsys):
    code, out = run(capsys, "ideal", "--v", "34512", "--w", "24513", "--family", "patch")
    data = json.loads(out)
    assert code == 0 and len(data["generators"]) >= 6
    assert all({"poly", "box", "rows", "cols"} <= set(g) for g in data["generators"])


def test_ideal_schubert(capsys):
    code, out = run(capsys, "ideal", "--w", "2143", "--family", "schubert", "--pretty")
    assert code == 0 and "x_{1,1}" in out


def test_verify_gb(capsys):
    code, out = run(capsys, "verify-gb", "--v", "34512", "--w", "24513")
    data = json.loads(out)
    assert code == 0 and data["certified"] and data["failures"] == []


def test_verify_recursion(capsys):
    code, out = run(capsys, "verify-recursion", "--v", "45312", "--w", "12543")
    data = json.loads(out)
    assert code == 0 and data["passed"] and len(data["checks"]) == 6


def test_kpoly_and_kostant(capsys):
    code, out = run(capsys, "kpoly", "--v", "34512", "--w", "14325")
    assert code == 0 and json.loads(out)["kpoly"]
    code, out = run(capsys, "verify-kostant", "--v", "34512", "--w", "14325")
    data = json.loads(out)
    assert code == 0 and data["case"] == 2 and data["holds"]
    code, out = run(capsys, "verify-kostant", "--v", "32154", "--w", "34512", "--convention", "gmodb", "--pretty")
    assert code == 0 and "holds = True" in out


def test_complex(capsys):
    code, out = run(capsys, "complex", "--v", "4231", "--w", "2143")
    data = json.loads(out)
    assert data["vertex_decomposable"] and data["pure"] and data["codim"] == 2


def test_homogeneity_pair(capsys):
    code, out = run(capsys, "homogeneity", "--pair", "4231", "2143")
    data = json.loads(out)
    assert code == 0 and not data["direct_patch"] and data["direct_kl"] and data["witnesses"]


def test_glicci(capsys):
    code, out = run(capsys, "glicci", "--v", "3412", "--w", "1324", "--pretty")
    assert code == 0 and "terminal" in out
    code, out = run(capsys, "glicci", "--v", "4231", "--w", "2143")
    assert code == 2


def test_show(capsys):
    code, out = run(capsys, "show", "order", "--v", "34512")
    assert out.strip() == "z13 > z23 > z12 > z22 > z11 > z21 > z15 > z33 > z43 > z32"
    code, out = run(capsys, "show", "ideal", "--v", "1234", "--w", "2134")
    assert out.strip() == "unit ideal"
    code, out = run(capsys, "diagram", "--w", "24513", "--pretty")
    assert out.count("#") == 5


def test_parse_error_has_position(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify-gb", "--v", "34x12", "--w", "12345"])
    assert e.value.code == 2 and "position 3" in capsys.readouterr().err


def test_sweep_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for f in (a, b):
        assert main(["sweep", "--n", "3", "--out", str(f)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_sample_seeded():
    r1 = sweep(5, ["gb"], sample=5, seed=7)
    r2 = sweep(5, ["gb"], sample=5, seed=7)
    assert r1 == r2 and r1["n_pairs"] == 5
    with pytest.raises(ValueError):
        sweep(5, ["gb"])


def test_sweep_n2():
    rep = sweep(2, ["gb", "squarefree", "codim"])
    assert rep["n_pairs"] == 4
    assert all(s["fail"] == 0 for s in rep["summary"].values())


def test_sweep_workers_match_serial():
    serial = sweep(3, ["gb", "kostant"], workers=1)
    pooled = sweep(3, ["gb", "kostant"], workers=2)
    assert serial == pooled


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "schubpatch", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip()


def test_glicci_schubert_mode(capsys):
    code, out = run(capsys, "glicci", "--w", "2143")
    data = json.loads(out)
    assert code == 0 and data["terminal"] == ["x11", "x31"] and data["witnesses_ok"]


def test_glicci_rejects_inhomogeneous(capsys):
    code, out = run(capsys, "glicci", "--v", "4231", "--w", "1324")
    assert code == 2 and "not standardly homogeneous" in json.loads(out)["error"]
