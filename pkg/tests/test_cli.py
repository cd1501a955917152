import subprocess
import sys
from pathlib import Path

import pytest

from tamebrauer.cli import main
from tamebrauer.report import parse_summary as _pairs

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_summary(text):
    return dict(_pairs(text))


def scn(name):
    return str(SCENARIOS / name)


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--scenario", scn("gm_quaternion.scn"))
    assert code == 0
    s = parse_summary(out)
    assert s["INV[0,0]"] == "1/2" and s["INV[0,1]"] == "0"
    assert s["INV[1,0]"] == "1/9" and s["INV[1,3]"] == "0"
    assert s["STATUS"] == "ok"


def test_intersect(capsys):
    code, out, _ = run(capsys, "intersect", "--scenario", scn("gm_quaternion.scn"))
    assert code == 0
    s = parse_summary(out)
    assert s["DATA[0]"] == "xbar=(0,) m=[1, 1] r=[1, 1]"
    assert s["EQUIVALENT_PAIRS"] == "0~2"


@pytest.mark.parametrize("command,name", [
    ("equiv", "gm_quaternion.scn"),
    ("equiv", "surface.scn"),
    ("verify-thm16", "thm16_p5.scn"),
    ("cohom", "baby_cohom.scn"),
    ("eval", "surface.scn"),
    ("intersect", "surface.scn"),
])
def test_commands_succeed_and_rerun_identically(capsys, command, name):
    code, out1, _ = run(capsys, command, "--scenario", scn(name))
    assert code == 0, out1
    code, out2, _ = run(capsys, command, "--scenario", scn(name))
    assert out1 == out2


def test_residue_diagram_command_summary(capsys):
    code, out, _ = run(capsys, "verify-thm16", "--scenario", scn("thm16_p5.scn"))
    s = parse_summary(out)
    assert s["N3_FAILURES"] == "0" and s["LISTED_CLASSES_FAILURES"] == "0"
    assert int(s["N3_SAMPLES"]) == 100


def test_precision_override_does_not_change_summary(capsys):
    a = parse_summary(run(capsys, "equiv", "--scenario", scn("gm_quaternion.scn"), "--precision", "32")[1])
    b = parse_summary(run(capsys, "equiv", "--scenario", scn("gm_quaternion.scn"), "--precision", "64")[1])
    assert a == b


def test_seed_override_changes_sample(capsys):
    a = parse_summary(run(capsys, "equiv", "--scenario", scn("gm_quaternion.scn"), "--seed", "1")[1])
    b = parse_summary(run(capsys, "equiv", "--scenario", scn("gm_quaternion.scn"), "--seed", "2")[1])
    assert a["DIGEST"] != b["DIGEST"]


def test_cohom_values(capsys):
    s = parse_summary(run(capsys, "cohom", "--scenario", scn("baby_cohom.scn"))[1])
    assert s["N3_E2_02"] == "3" and s["N3_KERNEL"] == "Z/3"
    assert s["N5_E2_02"] == "1" and s["N5_KERNEL"] == "0"
    assert s["N3_PROBE"] == "injective=False surjective=True"


@pytest.mark.parametrize("name", ["counterexample-s1", "example-1-1", "example-1-2", "example-1-4", "example-3-13", "remark-3-14"])
def test_repro_commands(capsys, name):
    code, out, _ = run(capsys, "repro", name)
    assert code == 0
    assert parse_summary(out)["STATUS"] == "ok"


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "eval")[0] == 2
    assert run(capsys, "eval", "--scenario", str(tmp_path / "missing.scn"))[0] == 2
    bad = tmp_path / "bad.scn"
    bad.write_text("[field]\np = 7\n[extra]\n")
    code, _, err = run(capsys, "eval", "--scenario", str(bad))
    assert code == 2 and "line 3" in err
    noseed = tmp_path / "noseed.scn"
    noseed.write_text("[field]\np = 7\n[scheme]\nboundary = x1\n")
    assert run(capsys, "equiv", "--scenario", str(noseed))[0] == 2
    assert run(capsys, "verify-thm16", "--scenario", scn("gm_quaternion.scn"))[0] == 2  # n=6 at p=7


def test_precision_exhausted_exit_code(tmp_path, capsys):
    f = tmp_path / "tight.scn"
    f.write_text(
        "[field]\np = 7\nprecision = 4\n[scheme]\nboundary = x1 - 1\n"
        "[classes]\n(cup-unram (- x1 1) 3 1)\n[points]\n16808\n"
    )
    code, _, err = run(capsys, "eval", "--scenario", str(f))
    assert code == 3 and "precision" in err.lower()


def test_console_script_entry():
    out = subprocess.run(
        [sys.executable, "-m", "tamebrauer.cli", "repro", "example-1-4"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "E2_02\t3" in out.stdout
