from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cdmaseq.arrays import BinaryArray
from cdmaseq.cli import main
from cdmaseq.families import SequenceFamily
from cdmaseq.shiftseq import ShiftFamily


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_kasami(tmp_path, capsys):
    out = tmp_path / "fam.txt"
    code, _, _ = run(capsys, "gen", "kasami", "-m", "3", "-o", str(out), "--no-header")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# kind=kasami")
    members = [l for l in lines if not l.startswith("#")]
    assert len(members) == 8 and all(len(l) == 63 for l in members)


def test_gen_bad_parameter(tmp_path, capsys):
    out = tmp_path / "fam.txt"
    code, _, err = run(capsys, "gen", "kasami", "-m", "0", "-o", str(out))
    assert code == 2
    assert "-m" in err and len(err.strip().splitlines()) == 1
    assert not out.exists()


def test_gen_library_error_is_usage(capsys):
    code, _, err = run(capsys, "gen", "nokumar", "-m", "4", "-r", "3")
    assert code == 2 and "gcd" in err


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["gen", "nosuch"])
    assert exc.value.code == 2


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert run(capsys, "gen", "gold", "-n", "5", "-o", str(path), "--no-header")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_header_line_present_by_default(capsys):
    code, out, _ = run(capsys, "gen", "legendre", "-p", "7")
    assert code == 0
    assert "# generated=" in out
    assert out.splitlines()[-1] == "0110100"


def test_conjecture_example(capsys):
    code, out, _ = run(capsys, "conjecture", "--family", "mt-c", "-n", "4", "--column", "legendre:17", "--no-header")
    assert code == 0
    assert "x^120+x^105+x^90+x^60+x^30+x^15+1" in out
    assert "x^8+x^7+x^6+x^4+x^2+x+1" in out
    assert out.strip().splitlines()[-1] == "MATCH"


def test_fold_unfold_roundtrip(tmp_path, capsys):
    fam = tmp_path / "fam.txt"
    run(capsys, "gen", "kasami", "-m", "3", "-o", str(fam))
    for fmt in ("bits", "pbm"):
        arr = tmp_path / f"a.{fmt}"
        assert run(capsys, "fold", "-i", str(fam), "--member", "2", "--format", fmt, "-o", str(arr))[0] == 0
        text = arr.read_text()
        if fmt == "pbm":
            assert text.startswith("P1\n")
            BinaryArray.from_pbm(text)
        seq = tmp_path / f"s.{fmt}.txt"
        assert run(capsys, "unfold", "-i", str(arr), "-o", str(seq))[0] == 0
        back = SequenceFamily.from_text(seq.read_text())
        orig = SequenceFamily.from_text(fam.read_text())
        assert back[0] == orig[2]


def test_fold_bad_dims(tmp_path, capsys):
    fam = tmp_path / "fam.txt"
    run(capsys, "gen", "legendre", "-p", "7", "-o", str(fam))
    code, _, err = run(capsys, "fold", "-i", str(fam), "-u", "2", "-v", "3")
    assert code == 2 and "-u/-v" in err


def test_missing_input(capsys):
    code, _, err = run(capsys, "corr", "-i", "/nonexistent/file.txt")
    assert code == 2 and "cannot read" in err


def test_corr_and_complexity(tmp_path, capsys):
    fam = tmp_path / "fam.txt"
    run(capsys, "gen", "kasami", "-m", "3", "-o", str(fam))
    code, out, _ = run(capsys, "--threads", "2", "corr", "-i", str(fam), "--no-header")
    doc = json.loads(out)
    assert code == 0 and doc["max_cross"] == 9 and set(doc["histogram"]) == {"-9", "-1", "7"}
    code2, out2, _ = run(capsys, "--threads", "1", "corr", "-i", str(fam), "--no-header", "--method", "fft")
    assert json.loads(out2) == doc
    code, out, _ = run(capsys, "complexity", "-i", str(fam), "--no-header")
    doc = json.loads(out)
    assert code == 0 and doc["complexity"]["max_l"] == 9
    assert all(m["l"] == m["oracle_l"] for m in doc["members"])


def test_shifts_and_hop(tmp_path, capsys):
    path = tmp_path / "b.csv"
    assert run(capsys, "shifts", "mt-b", "-p", "3", "-o", str(path))[0] == 0
    fam = ShiftFamily.from_text(path.read_text())
    assert fam.patterns[0].to_csv() == "-,1,0,2"
    code, out, _ = run(capsys, "hop", "--check", str(path), "--no-header")
    assert code == 0 and json.loads(out)["max_coincidence"] <= 2
    code, out, _ = run(capsys, "hop", "-m", "3", "--no-header")
    hop = ShiftFamily.from_text(out)
    assert len(hop) == 8 and hop.params["max_coincidence"] == "2"
    code, out, _ = run(capsys, "hop", "--reference", "--no-header")
    assert json.loads(out)["pairwise_max"]["AH"] <= 2


def test_shifts_pre_rotation(capsys):
    code, out, _ = run(capsys, "shifts", "mt-c", "-n", "4", "--pre-rotation", "--no-header")
    assert code == 0 and out.splitlines()[-1].count("-") == 2
    code, _, err = run(capsys, "shifts", "mt-c", "-n", "3")
    assert code == 2


def test_report_table1(capsys):
    code, out, _ = run(capsys, "report", "table1", "--length", "255", "--no-header", "--format", "json")
    cells = {c["family"]: c for c in json.loads(out)["cells"]}
    assert code == 0
    assert cells["bent"]["status"] == "reference-only" and cells["bent"]["measured"] is None
    for fam in ("kasami", "gold", "nokumar", "mt-c"):
        assert cells[fam]["status"] == "match", fam
    assert cells["mt-c"]["measured_l"] == 120


def test_report_out_of_scope(capsys):
    assert run(capsys, "report", "table1", "--length", "65535")[0] == 2
    assert run(capsys, "report", "table1", "--family", "large-kasami")[0] == 2


def test_report_table2(capsys):
    code, out, _ = run(capsys, "report", "table2", "--family", "kasami,kerdock", "--no-header", "--format", "json")
    rows = {r["family"]: r for r in json.loads(out)["rows"]}
    assert code == 0
    assert rows["kerdock"]["status"] == "reference-only"
    assert rows["kasami"]["length_formula"] == "2^(2n)-1"
    assert rows["kasami"]["size_formula"] == "sqrt(L)"
    assert rows["kasami"]["measured_set_size"] == 16


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "cdmaseq.cli", "gen", "legendre", "-p", "17", "--no-header"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "01101000110001011"
