import csv
import io
import json
import subprocess
import sys

import pytest

from apery2d.cli import run
from apery2d.polypair import PRESETS, dump_pair


def call(capsys, *argv):
    code = run(list(argv) + ["--no-timestamp"])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_pair(capsys):
    code, out, _ = call(capsys, "check-pair", "--pair", "zeta3")
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"config", "suite", "summary"}
    assert {s["name"]: s["status"] for s in rep["suite"]}["cond2"] == "pass"


def test_check_pair_zeta2_flags_cond3(capsys):
    code, out, _ = call(capsys, "check-pair", "--pair", "zeta2")
    assert code == 0
    assert {s["name"]: s["status"] for s in json.loads(out)["suite"]}["cond3"] == "flag"


def test_check_pair_failing_shift_identity(capsys):
    code, _, _ = call(capsys, "check-pair", "--pair", "zeta2-literal")
    assert code == 1


def test_malformed_pair_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = call(capsys, "check-pair", "--pair", f"file:{bad}")
    assert code == 2 and "cannot read" in err


def test_pair_file(tmp_path, capsys):
    path = tmp_path / "z3.json"
    path.write_text(dump_pair(PRESETS["zeta3"]))
    code, _, _ = call(capsys, "verify", "--pair", f"file:{path}", "--size", "8")
    assert code == 0


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "--pair", "zeta3", "--size", "30")
    assert code == 0
    names = [s["name"] for s in json.loads(out)["suite"]]
    assert "integrality[strict]" in names and "enclosure overlaps zeta(3)" in names


def test_verify_zeta2_empirical(capsys):
    code, out, _ = call(capsys, "verify", "--pair", "zeta2", "--size", "20")
    assert code == 0
    assert "integrality[empirical]" in [s["name"] for s in json.loads(out)["suite"]]


def test_config_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "--size", "0"])
    assert exc.value.code == 2
    code, _, _ = call(capsys, "certify", "--pair", "log2-alt", "--size", "5")
    assert code == 2
    code, _, _ = call(capsys, "verify", "--pair", "nope")
    assert code == 2


def test_certify_small(capsys):
    code, out, _ = call(capsys, "certify", "--size", "2")
    assert code == 0
    cert = [s for s in json.loads(out)["suite"] if s["name"] == "certificate"][0]["certificate"]
    assert (cert["rows"][1]["a_n"], cert["rows"][1]["b_n"]) == ("702", "584")


def test_certify_precision(capsys):
    code, _, err = call(capsys, "certify", "--size", "50", "--digits", "60")
    assert code == 3 and "digits" in err


def test_certify_full(capsys):
    code, out, _ = call(capsys, "certify", "--size", "50", "--digits", "120", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["n", "a_n", "b_n"] and len(rows) == 51
    assert abs(float(rows[-1][3])) < 1e-10


def test_cfrac(capsys):
    code, out, _ = call(capsys, "cfrac", "--x", "1", "--depth", "60", "--digits", "40")
    assert code == 0
    conv = [s for s in json.loads(out)["suite"] if s["name"].startswith("convergent vs")][0]
    assert float(conv["residual_midpoint"]) < 1e-10


def test_cfrac_bridge_and_domain(capsys):
    code, out, _ = call(capsys, "cfrac", "--bridge", "--i", "3", "--depth", "80", "--format", "csv")
    assert code == 0
    vals = [float(r[2]) for r in list(csv.reader(io.StringIO(out)))[1:]]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    code, _, _ = call(capsys, "cfrac", "--x", "-1")
    assert code == 2


def test_build_csv_and_text(capsys):
    code, out, _ = call(capsys, "build", "--size", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["i", "j", "series", "unit"] and ["2", "2", "351/4", "73/1"] in rows
    code, out, _ = call(capsys, "build", "--size", "3", "--mode", "streaming", "--format", "text")
    assert code == 0 and "[PASS]" in out


def test_search_and_asymptotics(capsys):
    code, out, _ = call(capsys, "search", "--degree", "1", "--height", "1")
    assert code == 0 and json.loads(out)["suite"][0]["found"] == 10
    code, _, _ = call(capsys, "search", "--degree", "8", "--height", "5")
    assert code == 2
    code, out, _ = call(capsys, "asymptotics", "--size", "20")
    assert code == 0


def test_reports_are_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert run(["verify", "--size", "12", "--no-timestamp", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"timestamp" not in outs[0]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "apery2d", "check-pair", "--format", "text"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "cond1" in res.stdout
