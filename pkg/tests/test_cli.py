import json
import subprocess
import sys

import pytest

from ktschubert.cli import JobConfig, main
from ktschubert.rootsystem import ConfigurationError


def run(*args):
    return subprocess.run([sys.executable, "-m", "ktschubert", *args], capture_output=True, text=True)


def test_a1_table_json(tmp_path, capsys):
    assert main(["table", "--type", "A", "--rank", "1", "--claims", "grra53"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["group"] == "A1"
    entries = doc["tables"][0]["entries"]
    assert [(e["u_word"], e["v_word"]) for e in entries] == [("e", "e"), ("e", "s1"), ("s1", "e"), ("s1", "s1")]
    top = entries[-1]["constants"]["s1"]
    # c_{s1 s1}^{s1} = 1 - e^{-alpha}; sign-corrected it is y
    assert top["laurent"] == [[[-2], -1], [[0], 1]]
    assert top["grading_sign"] == -1
    assert top["y_poly"] == [[[1], 1]]


def test_table_csv(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["table", "--type", "A", "--rank", "2", "--basis", "xi_upper", "--format", "csv", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("group,claim,basis,u,v,w")
    assert all(line.startswith("A2,grku52,xi_upper,") for line in lines[1:])


def test_verify_writes_reports(tmp_path, capsys):
    assert main(["verify", "--type", "B", "--rank", "2", "-o", str(tmp_path)]) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["report_dualizing_B2.json", "report_grku52_B2.json", "report_grra53_B2.json"]
    rep = json.loads((tmp_path / "report_grra53_B2.json").read_text())
    assert rep["status"] == "pass" and rep["violations"] == []
    assert "PASS" in capsys.readouterr().out


def test_verify_parabolic_and_subtorus(tmp_path):
    assert main(["verify", "--type", "A", "--rank", "3", "--parabolic", "1,3", "--claims", "grra53,grku52", "-o", str(tmp_path)]) == 0
    assert (tmp_path / "report_grku52_A3_P13.json").exists()
    m = tmp_path / "m.txt"
    m.write_text("1 1\n")
    assert main(["verify", "--type", "A", "--rank", "2", "--claims", "grku51", "--subtorus", str(m), "-o", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "report_grku51_A2.json").read_text())
    assert rep["subtorus"] == [[1, 1]]


def test_fault_injection_exit_code(tmp_path):
    for claim in ("grra53", "grku52", "dualizing", "richardson"):
        code = main(["verify", "--type", "A", "--rank", "2", "--claims", claim, "--fault-inject", "-o", str(tmp_path)])
        assert code == 2, claim


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--type", "A", "--rank", "2", "--claims", ""],
        ["verify", "--type", "A", "--rank", "2", "--claims", "bogus"],
        ["verify", "--type", "Q", "--rank", "2"],
        ["verify", "--type", "A", "--rank", "9"],
        ["verify", "--type", "A", "--rank", "2", "--parabolic", "3"],
        ["verify", "--type", "A", "--rank", "2", "--parabolic", "1", "--claims", "dualizing"],
        ["table", "--type", "A", "--rank", "2", "--basis", "O_lower"],
        ["table", "--type", "A", "--rank", "2", "--format", "xml"],
        ["verify", "--type", "A", "--rank", "2", "--jobs", "0"],
        ["verify", "--rank", "2"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 1


def test_resource_cap_exit_code():
    assert main(["verify", "--type", "E", "--rank", "6", "--claims", "grra53"]) == 3


def test_jobconfig_validation():
    JobConfig("A", 2).validate("verify")
    with pytest.raises(ConfigurationError):
        JobConfig("A", 2, claims=()).validate("verify")
    with pytest.raises(ConfigurationError):
        JobConfig("A", 2, degree_cap=-1).validate("verify")


def test_module_entry_point_and_determinism(tmp_path):
    cold = run("table", "--type", "A", "--rank", "2", "--claims", "grra53,grku52,dualizing", "--cache-dir", str(tmp_path / "c"))
    warm = run("table", "--type", "A", "--rank", "2", "--claims", "grra53,grku52,dualizing", "--cache-dir", str(tmp_path / "c"))
    par = run("table", "--type", "A", "--rank", "2", "--claims", "grra53,grku52,dualizing", "--jobs", "2")
    assert cold.returncode == warm.returncode == par.returncode == 0
    assert cold.stdout == warm.stdout == par.stdout
    assert list((tmp_path / "c").iterdir())


def test_cache_command(tmp_path):
    assert main(["cache", "--type", "G", "--rank", "2", "--cache-dir", str(tmp_path)]) == 0
    first = {p.name: p.read_bytes() for p in tmp_path.iterdir()}
    assert main(["cache", "--type", "G", "--rank", "2", "--cache-dir", str(tmp_path)]) == 0
    assert {p.name: p.read_bytes() for p in tmp_path.iterdir()} == first
