import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from painleve_fibrations.cli import main
from painleve_fibrations.catalog import data_dir


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


def test_usage_errors():
    assert run()[0] == 1
    assert run("verify")[0] == 1
    assert run("classify", "--system", "H_NOPE")[0] == 1
    assert run("verify", "--all", "--jobs", "0")[0] == 1
    assert run("bogus")[0] == 1


def test_help_exits_zero():
    assert run("--help")[0] == 0


def test_verify_p2_text():
    code, out = run("verify", "--system", "H_II")
    assert code == 0
    assert out.startswith("# seed 20240917")
    assert all(l == l.rstrip() for l in out.splitlines())


def test_verify_printed_appendix_is_a_mismatch():
    assert run("verify", "--system", "H_Suz^{3/2+2}")[0] == 2
    assert run("verify", "--system", "H_Suz^{3/2+2}", "--corrected")[0] == 0


def test_verify_entry_without_data_is_unsupported():
    # the Gar 9/2 entry carries a curve but no Hamiltonian pair
    assert run("verify", "--system", "H_Gar^{9/2}")[0] == 3


def test_classify_formats():
    code, out = run("classify", "--system", "H_I", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["seed"] == 20240917
    (r,) = d["results"]
    assert r["kodaira"] == "II*" and r["agreement"] is True
    code, out = run("classify", "--system", "H_I", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO("\n".join(
        l for l in out.splitlines() if not l.startswith("#")))))
    assert rows[0]["computed"] == "II* (E8^(1))"
    code, out = run("classify", "--system", "H_I", "--format", "markdown")
    assert "| system |" in out


def test_classify_both_fibrations_gar():
    code, out = run("classify", "--system", "H_Gar^{9/2}", "--fibration", "both",
                    "--format", "json")
    assert code == 0
    res = json.loads(out)["results"]
    assert [r["fibration"] for r in res] == ["h", "g"]
    assert all(r["stable"] == "I" for r in res)


def test_deterministic_across_jobs():
    a = run("classify", "--all", "--format", "json", "--seed", "3")
    b = run("classify", "--all", "--format", "json", "--seed", "3", "--jobs", "2")
    assert a == b


def test_table_genus1():
    code, out = run("table", "--set", "genus1", "--format", "csv")
    assert code == 0
    assert out.count("computed") >= 8 and "MISMATCH" not in out


def test_curve_file(tmp_path):
    f = tmp_path / "p1.json"
    f.write_text(json.dumps({"shape": "g1", "fibration_variable": "h",
                             "coefficients": {"a": "t", "b": "h"}}))
    code, out = run("classify", "--curve", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["results"][0]["kodaira"] == "II*"
    # flat a, b as well as the nested form written by to_json
    f2 = tmp_path / "flat.json"
    f2.write_text(json.dumps({"shape": "g1", "a": "t", "b": "h"}))
    assert run("classify", "--curve", str(f2))[0] == 0
    g = tmp_path / "bad.json"
    g.write_text(json.dumps({"shape": "spectral", "poly": "y^2 - x^8 - h"}))
    assert run("classify", "--curve", str(g))[0] == 3
    assert run("classify", "--curve", str(tmp_path / "missing.json"))[0] == 1
    assert run("classify", "--curve", str(f), "--all")[0] == 1


def test_data_dir_env(tmp_path, monkeypatch):
    dst = tmp_path / "d"
    shutil.copytree(data_dir(), dst)
    t = dst / "expected_tables.json"
    t.write_text(t.read_text().replace('"II*"', '"III*"', 1))
    assert run("table", "--data-dir", str(dst))[0] == 3
    monkeypatch.setenv("PAINLEVE_DATA_DIR", str(dst))
    assert run("table")[0] == 3


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "painleve_fibrations.cli", "classify",
                        "--system", "H_VI"], capture_output=True, text=True)
    assert r.returncode == 0 and "I0*" in r.stdout
