import subprocess
import sys

import pytest

from scalarend import __version__
from scalarend.cli import run


def report(text):
    out = {}
    for line in text.splitlines():
        k, _, v = line.partition(": ")
        out[k] = v
    return out


def test_qend_case_i():
    code, text = run(["qend", "--case", "i", "--field", "9", "--m", "1..100"])
    r = report(text)
    assert code == 0 and r["VERDICT"] == "PASS"
    assert all(r[f"END_DIM[{m}]"] == "1" for m in range(1, 101))
    assert r["FIELD"] == "GF 3 2 2 2 1" and r["VERSION"] == __version__ and r["SEED"] == "0"


def test_qend_case_iii():
    code, text = run(["qend", "--case", "iii", "--r", "5", "--field", "2", "--m", "1..100"])
    assert code == 0 and text.endswith("VERDICT: PASS\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["qend", "--case", "i", "--field", "9", "--m", "0"],
        ["qend", "--case", "i", "--field", "6", "--m", "1"],
        ["qend", "--case", "iii", "--field", "2", "--m", "1..3"],
        ["qend", "--case", "i", "--field", "2", "--m", "5..2"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 2


def test_chop_and_ext():
    code, text = run(["chop", "--entry", "a6_f9", "--module", "perm"])
    assert code == 0 and report(text)["FACTORS"] == "1,1,4"
    code, text = run(["ext", "--entry", "a6_f9", "--s", "dim1", "--t", "dim4", "--method", "both"])
    r = report(text)
    assert code == 0 and r["EXT1_DIM"] == "2" and r["EXT1_DIM_FREEHULL"] == "2"


def test_verify_and_certify():
    code, text = run(["verify", "--entry", "a6_f9", "--case", "ii", "--m", "1..8"])
    r = report(text)
    assert code == 0
    assert [r[f"RESULT[{m}]"] for m in range(1, 9)] == ["PASS"] * 8
    code, text = run(["certify", "--entry", "a6_f9", "--m", "1..4"])
    assert code == 0 and report(text)["CERTIFICATE[4]"] == "PASS"
    code, text = run(["certify", "--entry", "a6_f9", "--m", "1", "--module", "S"])
    assert code == 1 and report(text)["VERDICT"].startswith("FAIL")


def test_refusals():
    code, text = run(["chop", "--entry", "hs_f3"])
    assert code == 1 and "metadata-only" in text
    code, text = run(["chop", "--entry", "nope"])
    assert code == 1 and "unknown catalog entry" in text
    code, text = run(["verify", "--entry", "a6_f9", "--case", "iii", "--m", "1"])
    assert code == 1


def test_search_reports_no_case_i_pair():
    code, text = run(["search", "--entry", "a6_f9"])
    r = report(text)
    assert code == 0 and r["MAX_EXT1_DIM"] == "2" and r["CASE_I_PAIRS"] == "none"


def test_build_writes_modules(tmp_path):
    code, text = run(["build", "--entry", "a6_f9", "--m", "1..2", "--write-dir", str(tmp_path)])
    assert code == 0 and report(text)["DIM[2]"] == "12"
    assert (tmp_path / "a6_f9_ii_m2.rep").read_text().startswith("GF 3 2")


def test_reports_are_deterministic(tmp_path):
    argv = ["build", "--entry", "a6_f9", "--m", "1..3", "--basis", "alt", "--seed", "7"]
    out = tmp_path / "r.txt"
    cmd = [sys.executable, "-m", "scalarend.cli", *argv, "--out", str(out)]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second == out.read_bytes()
    assert b"SEED: 7" in first
