import json
import subprocess
import sys

import pytest

from eislattice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_ring(capsys):
    code, out, _ = run(capsys, "ring", "1-w", "th")
    assert code == 0
    assert out["norm"] == 1 and out["mod_theta"] == 2 and out["product"] == [1, 1]
    code, out, _ = run(capsys, "ring", "th")
    assert out["norm"] == 3 and out["mod_theta"] == 0


def test_lattice(capsys):
    code, out, _ = run(capsys, "lattice", "--lattice", "lambda4", "--x", "r1")
    assert code == 0 and out["rank"] == 4 and out["psi"] == [3, 0]


def test_shortvec(capsys):
    code, out, _ = run(capsys, "shortvec", "--norm", "3", "--count-only")
    assert (code, out) == (0, {"count": 240})
    code, out, _ = run(capsys, "shortvec", "--norm", "3", "--representatives")
    assert out["count"] == 240 and len(out["representatives"]) == 40


def test_classify_and_decompose(capsys):
    code, out, _ = run(capsys, "classify", "pair", "--z", "r1+r2", "--r", "r1")
    assert code == 0 and out["primitive"] is True and out["relative_position"] in "abcde"
    code, out, _ = run(capsys, "decompose", "six", "--z", "r1+r2")
    assert code == 0 and out["count"] == 3
    code, out, _ = run(capsys, "decompose", "six", "--z", "r1+r2", "--mode", "perp")
    assert out["count"] == 4
    code, out, _ = run(capsys, "classify", "dclass", "--type", "theta")
    assert (out["rank6"], out["rank9"], out["lines9"]) == (1, 2, 4)


def test_git_and_kodaira(capsys):
    code, out, _ = run(capsys, "git", "divisor", "--profile", "6,6")
    assert out["divisor_stability"] == "minimal_strictly_semistable"
    code, out, _ = run(capsys, "git", "stability", "--f0", "[0,0,0,0,1]", "--f1", "[1,0,0,0,0,0,1]")
    assert code == 0 and out["pair_stability"] == "stable" and out["divisor_stability"] == "stable"
    code, out, _ = run(capsys, "git", "j", "--lam", "-1", "--mu", "1")
    assert out["j"] == ["1", "0"]
    code, out, _ = run(capsys, "kodaira", "type", "--j", "inf", "--deg", "2", "--chi", "2")
    assert out["type"] == "I2"
    code, out, _ = run(capsys, "kodaira", "enumerate")
    assert out["count"] == 329


def test_picard(capsys):
    code, out, _ = run(capsys, "picard", "verify", "--cases", "50")
    assert code == 0 and out["cartan_is_affine_e8"]


@pytest.mark.parametrize(
    "argv",
    [
        ["ring", "1+"],
        ["decompose", "six", "--z", "r1"],
        ["kodaira", "type", "--j", "0", "--deg", "1", "--chi", "3"],
        ["git", "divisor", "--profile", "6,5"],
        ["classify", "pair", "--z", "r1+r2"],
        ["lattice", "--lattice", "nope"],
        ["git", "stability", "--f0", "[1,2]", "--f1", "[0,0,0,0,0,0,1]"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out is None and err.startswith("eislattice: error:")


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["kodaira", "type", "--j", "7"])
    assert exc.value.code == 2


def test_failed_check_exits_1(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "pham.integral-monodromy", "--no-timing")
    assert code == 1 and out["passed"] is False


def test_verify_all_subset_is_byte_stable(capsys):
    argv = ["verify-all", "--only", "ring.units", "picard.eichler-siegel", "git.stability", "--no-timing"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["schema_version"] == 1 and [c["id"] for c in doc["checks"]] == ["ring.units", "picard.eichler-siegel", "git.stability"]
    assert all("wall_time" not in c for c in doc["checks"])


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "eislattice.cli", "shortvec", "--norm", "6", "--count-only"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout) == {"count": 2160}
