import json
import subprocess
import sys

import pytest

from padicps import pseries as ps
from padicps import laf
from padicps.cli import main
from padicps.suites import equivariance_suite


def run(*args):
    return subprocess.run([sys.executable, "-m", "padicps", *args], capture_output=True, text=True)


def test_classify_json(capsys):
    assert main(["classify", "--chi", "m=1;cond=0;unit=;at_p=p^-2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["case"] == "B" and out["topological_length"] == 3


def test_classify_text(capsys):
    assert main(["classify", "--chi", "c=1/2", "--format", "text"]) == 0
    assert "verdict: simple" in capsys.readouterr().out


def test_bad_character_exit_code(capsys):
    assert main(["classify", "--chi", "m=2;zzz=1"]) == 2
    assert "position 4" in capsys.readouterr().err


def test_unknown_suite_exit_code():
    assert main(["suite", "--suite", "nonsense"]) == 2


def test_empty_suite_selection(capsys):
    assert main(["suite", "--suite", ""]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["suites"] == [] and out["passed"] is True


def test_suite_is_deterministic(tmp_path):
    args = ["suite", "--suite", "exactness,smooth-case", "--p", "3", "--level", "1",
            "--degree", "4", "--chi", "m=1;cond=0;unit=;at_p=1"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = run("suite", "--suite", "exactness", "--format", "text", "--degree", "4")
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("overall: PASS")


def test_negative_control_names_the_failing_check():
    def broken(phi):
        out = ps.intertwine(phi)
        return out.map_charts(lambda f: f, lambda f: laf.scale(f, -1))

    suite = equivariance_suite(5, 2, 30, 5, 6, 0, intertwiner=broken)
    assert not suite["passed"]
    failing = [c["name"] for c in suite["checks"] if not c["passed"]]
    assert "intertwiner_equivariance" in failing
