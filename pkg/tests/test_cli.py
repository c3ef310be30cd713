import csv
import io
import json
import subprocess
import sys

import pytest

from qmacmahon.cli import main
from golden import REFERENCE_TABLES, entries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_text_layout(capsys):
    code, out, _ = run(capsys, "table", "--n", "3", "--set", "1,2", "--kmax", "4", "--mmax", "15")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("|")[1].split() == [str(m) for m in range(1, 16)]
    row2 = lines[3].split("|")[1].split()
    assert row2 == "1 2 6 12 20 30 48 66 90 124 154 204 240".split()
    row4 = lines[5].split("|")[1].split()
    assert row4 == ["1", "2", "6", "12"]


def test_table_prints_explicit_zero(capsys):
    code, out, _ = run(capsys, "table", "--n", "5", "--set", "2,3", "--kmax", "3", "--mmax", "16")
    assert code == 0
    head, row1 = out.splitlines()[0], out.splitlines()[2]
    # m = 1 is blank (no admissible 1-tuple sums to 1), m = 5 is a genuine zero
    col5_end = head.index(" 5 ") + 2
    assert row1[col5_end - 1] == "0"
    assert row1.split("|")[1].split() == "1 1 2 0 5 1 5 3 5 0 11 1 9 5 10".split()


def test_table_csv_divisor_sums(capsys):
    code, out, _ = run(capsys, "table", "--n", "1", "--set", "1", "--kmax", "1", "--mmax", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "m", "coefficient"]
    assert [int(r[2]) for r in rows[1:]] == [1, 3, 4, 7, 6, 12]


@pytest.mark.parametrize("key", sorted(REFERENCE_TABLES))
def test_table_json_matches_reference(capsys, key):
    n, S = key
    t = REFERENCE_TABLES[key]
    kmax = max(k for k in t if k != "mmax")
    code, out, _ = run(capsys, "table", "--n", str(n), "--set", ",".join(map(str, S)),
                       "--kmax", str(kmax), "--mmax", str(t["mmax"]), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == n and doc["set"] == list(S) and doc["kind"] == "A"
    for k, m, v in entries(t):
        assert doc["table"][str(k)][str(m)] == v
    # blanks become 0
    assert doc["table"]["2"]["1"] == 0


def test_invalid_set_exit_2(capsys):
    code, _, err = run(capsys, "verify", "thm2", "--n", "5", "--set", "1,2")
    assert code == 2 and "NotSymmetric" in err
    code, _, _ = run(capsys, "table", "--n", "5", "--set", "1,9")
    assert code == 2
    code, _, _ = run(capsys, "series", "--preset", "C", "--order", "-3")
    assert code == 2


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "thm2", "--n", "3", "--set", "1,2", "--order", "30")
    assert code == 0
    assert json.loads(out)["status"] == "PASS"
    code, out, _ = run(capsys, "verify", "eta3", "--order", "50")
    assert code == 0


@pytest.mark.parametrize("ident,extra", [
    ("thm1-odd", []), ("thm1-even", []), ("jtp", []), ("heat", ["--r=-1/6", "--scale", "3"]),
    ("thm3", ["--n", "2", "--set", "1,2"]), ("recon-A", ["--preset", "E", "--kmax", "2"]),
    ("recon-B", ["--n", "2", "--set", "1,2", "--kmax", "2"]), ("recon-B", ["--n", "3", "--set", "1,2", "--kmax", "2"]),
])
def test_verify_each_identity(capsys, ident, extra):
    code, out, _ = run(capsys, "verify", ident, "--order", "12", *extra)
    assert code == 0
    assert all(json.loads(line)["status"] == "PASS" for line in out.splitlines())


def test_verify_failure_exit_3(capsys, monkeypatch):
    import qmacmahon.quasimodular as qm
    from fractions import Fraction
    monkeypatch.setattr(qm, "kappa", lambda w, odd: Fraction(1))
    code, out, _ = run(capsys, "verify", "recon-A", "--n", "3", "--set", "1,2", "--kmax", "2", "--order", "10")
    assert code == 3
    last = json.loads(out.splitlines()[-1])
    assert last["status"] == "FAIL" and last["first_mismatch"]["lhs"] != last["first_mismatch"]["rhs"]


def test_internal_cross_check_exit_1(capsys, monkeypatch):
    import qmacmahon.cli as cli
    monkeypatch.setattr(cli, "cross_check", lambda spec, fam: 1)
    code, _, err = run(capsys, "table", "--preset", "G", "--mmax", "8")
    assert code == 1 and "cross-check" in err


def test_series_json_round_trip(capsys):
    from qmacmahon.series import BiSeries
    code, out, _ = run(capsys, "series", "--preset", "C", "--kmax", "2", "--order", "12", "--format", "json")
    doc = json.loads(out)
    assert doc["spec"] == {"n": 2, "set": [1]}
    entries_ = [BiSeries.from_dict(e) for e in doc["entries"]]
    assert entries_[1].coeff(3) == 4  # C_1: odd divisors weighted, 3 = 3*1 + 1*3


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--n", "6", "--set", "1,5", "--k", "3", "--m", "13")
    assert code == 0 and out.strip() == "1"


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "3", "--set", "1,2", "--kmax", "2", "--order", "10")
    doc = json.loads(out)
    assert code == 0 and doc["recon"] == "PASS" and len(doc["parts"]) == 3


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["decompose", "--preset", "G", "--kmax", "2", "--order", "10", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qmacmahon", "oracle", "--preset", "A", "--k", "1", "--m", "6"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "12"


def test_unknown_preset_exit_2(capsys):
    code, _, err = run(capsys, "table", "--preset", "Z")
    assert code == 2 and "unknown preset" in err


@pytest.mark.parametrize("name,n,S", [("A", 1, "1"), ("C", 2, "1"), ("E", 5, "1,4"), ("G", 5, "2,3")])
def test_preset_equals_explicit_set(capsys, name, n, S):
    _, by_preset, _ = run(capsys, "table", "--preset", name, "--kmax", "3", "--mmax", "20", "--format", "csv")
    _, explicit, _ = run(capsys, "table", "--n", str(n), "--set", S, "--kmax", "3", "--mmax", "20", "--format", "csv")
    assert by_preset == explicit
