import json
import shutil
import subprocess
import sys

import pytest

from mackey_tor.cli import main
from mackey_tor.goldens import GOLDEN_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tor_csv(capsys):
    code, out, err = run(capsys, "tor", "--p", "2", "--max-deg", "8", "--max-hdeg", "5", "--jobs", "1")
    assert code == 0, err
    rows = out.splitlines()
    assert rows[0].startswith("i,d=0")
    assert rows[3].split(",")[3] == "L∨ ×1"


def test_tor_green_p3_reports_mismatch(capsys):
    code, out, err = run(capsys, "tor", "--p", "3", "--max-deg", "6", "--max-hdeg", "4",
                         "--jobs", "1")
    assert code == 1
    assert "mismatch (i=3, d=3)" in err


def test_tor_json_to_file(tmp_path, capsys):
    target = tmp_path / "t.json"
    code, _, _ = run(capsys, "tor", "--flavor", "tambara-fixed", "--p", "2", "--max-deg", "8",
                     "--max-hdeg", "6", "--format", "json", "-o", str(target), "--jobs", "1")
    assert code == 0
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["flavor"] == "tambara-fixed" and data["p"] == 2


@pytest.mark.parametrize("argv,code", [
    (["tor", "--p", "4"], 3),
    (["tor", "--p", "3", "--max-deg", "3"], 4),
    (["tor", "--max-deg", "30"], 5),
    (["tor", "--max-hdeg", "17"], 5),
    (["tor", "--bogus"], 2),
    (["nothing"], 2),
    ([], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(capsys, *argv)[0] == code


def test_unwritable_output(tmp_path, capsys):
    code, _, err = run(capsys, "tor", "--max-deg", "4", "--max-hdeg", "2",
                       "-o", str(tmp_path / "missing" / "x.csv"), "--jobs", "1")
    assert code == 7 and "error" in err


def test_verify_green(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--max-deg", "8", "--max-hdeg", "6")
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] and rep["d_squared_failures"] == [] and rep["golden_mismatches"] == []


def test_verify_koszul(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--max-deg", "8", "--max-hdeg", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["koszul"]["orbit_counts"] == {"|I_1|": 1, "|I_2|": 1}


def test_verify_burnside(capsys):
    code, out, _ = run(capsys, "verify", "--flavor", "burnside", "--p", "5")
    assert code == 0
    assert json.loads(out)["norm_failures"] == []


def test_selftest_detects_corrupt_golden(tmp_path, capsys):
    folder = tmp_path / "gold"
    shutil.copytree(GOLDEN_DIR, folder)
    path = next(folder.glob("reduced-tambara-fixed-p2-*.json"))
    data = json.loads(path.read_text(encoding="utf-8"))
    data["differentials"]["2"]["b"] = {"R(w)": -1}
    path.write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = run(capsys, "selftest", "--quick", "--golden-dir", str(folder))
    assert code == 1
    assert "FAIL golden reduced differentials" in out


def test_selftest_quick_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0, out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mackey_tor", "tor", "--max-deg", "4",
                           "--max-hdeg", "2", "--jobs", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("0,A ×1")
