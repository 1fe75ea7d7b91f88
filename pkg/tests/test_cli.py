import json
import os
import subprocess
import sys

import pytest

from qtorus.cli import main

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture(name):
    return os.path.join(FIX, name)


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main(list(argv) + ["--output", str(out)])
    return code, json.loads(out.read_text())


def test_analyze_c1(tmp_path):
    code, rep = run(tmp_path, "analyze", "--input", fixture("c1_pairs.json"))
    assert code == 0
    assert rep["k"] == [2] and rep["z"] == 1 and rep["N"] == 2 and rep["gamma_order"] == 4
    assert rep["normal_form"] and rep["schema"] == 1


def test_analyze_witt(tmp_path):
    code, rep = run(tmp_path, "analyze", "--input", fixture("witt.json"))
    assert code == 0 and rep["z"] == 0 and rep["N"] == 1 and rep["gamma_order"] == 1


def test_analyze_primitive_power(tmp_path):
    # any primitive k-th root is accepted in the normal-form slot
    code, rep = run(tmp_path, "analyze", "--input", fixture("zeta4_cubed.json"))
    assert code == 0 and rep["normal_form"] and rep["N"] == 4
    assert rep["q"][1][0] == [3, 4]


def test_analyze_non_normal(tmp_path):
    cfg = tmp_path / "q.json"
    cfg.write_text(json.dumps({"q": [[[0, 1], [1, 2], [0, 1]], [[1, 2], [0, 1], [1, 2]],
                                     [[0, 1], [1, 2], [0, 1]]]}))
    code, rep = run(tmp_path, "analyze", "--input", str(cfg))
    assert code == 0 and not rep["normal_form"]
    assert rep["N"] == 2 and rep["z"] == 1


@pytest.mark.parametrize("name", ["bad_antisymmetry.json", "bad_entry.json"])
def test_analyze_rejects_invalid_q(tmp_path, name, capsys):
    code, rep = run(tmp_path, "analyze", "--input", fixture(name))
    assert code == 2 and "error" in rep
    assert "qtorus:" in capsys.readouterr().err


def test_missing_input(tmp_path):
    code, rep = run(tmp_path, "analyze", "--input", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_jacobi_and_loop_hom(tmp_path):
    code, rep = run(tmp_path, "verify", "--input", fixture("c1.json"), "--suite", "jacobi,loop-hom")
    assert code == 0 and rep["passed"]
    assert [s["suite"] for s in rep["suites"]] == ["jacobi", "loop-hom"]
    assert rep["seed"] == 7 and rep["rng"]["generator"] == "PCG64"


def test_verify_corrupted_sigma(tmp_path):
    code, rep = run(tmp_path, "verify", "--input", fixture("sigma_fault.json"))
    assert code == 1 and not rep["passed"]
    cex = rep["suites"][0]["counterexample"]
    assert cex is not None and cex["replay_nonzero"]


def test_verify_unknown_suite(tmp_path):
    code, rep = run(tmp_path, "verify", "--input", fixture("c1.json"), "--suite", "nonsense")
    assert code == 2


def test_module_rejects_bad_w(tmp_path):
    code, rep = run(tmp_path, "module", "--input", fixture("bad_module.json"))
    assert code == 2 and "identity" in rep["error"]


def test_module_witt(tmp_path):
    code, rep = run(tmp_path, "module", "--input", fixture("witt.json"))
    assert code == 0
    assert rep["probe"]["verdict"] == "window-reducible"
    assert rep["minimal_annihilating_l"] == 2
    assert all(c["stable"] for c in rep["cover"]["weight_spaces"])


def test_module_c1(tmp_path):
    code, rep = run(tmp_path, "module", "--input", fixture("c1.json"), "--window", "1")
    assert code == 0
    assert set(rep["weight_dims"].values()) == {2}
    # natural V with b = 1 is annihilated at l = 2 (see notes on minimal l)
    assert rep["minimal_annihilating_l"] == 2


def test_verify_is_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / ("out%d.json" % i)
        proc = subprocess.run([sys.executable, "-m", "qtorus", "verify", "--input", fixture("c1.json"),
                               "--suite", "jacobi,rep", "--window", "1", "--output", str(path)])
        assert proc.returncode == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_stdout_output(capsys):
    assert main(["analyze", "--input", fixture("c1.json")]) == 0
    assert json.loads(capsys.readouterr().out)["N"] == 2
