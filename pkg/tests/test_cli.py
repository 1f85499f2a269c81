import csv
import io
import json
import subprocess
import sys

import pytest

from lgrig.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_prefix(capsys):
    assert run(["prefix", "--l", "const:1", "--n", "15"], capsys)[:2] == (0, "axayaxazaxayaxa\n")


def test_power_rows(capsys):
    code, out, _ = run(["power", "--l", "const:1", "--n-max", "4", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [(r["n"], r["Q"]) for r in rows] == [(2, 3), (3, 1), (4, 3)]


def test_power_word_and_cap(capsys):
    code, out, _ = run(["power", "--l", "const:2", "--word", "ax", "--power-cap", "8", "--format", "csv"], capsys)
    assert (code, out) == (0, "word,Q\nax,>=4\n")


def test_complexity_columns(capsys):
    code, out, _ = run(["complexity", "--l", "const:1", "--n-max", "5", "--format", "csv"], capsys)
    assert out.splitlines() == [
        "n,p_oracle,p_formula,delta",
        "1,4,,",
        "2,6,,",
        "3,8,,",
        "4,10,7,3",
        "5,13,10,3",
    ]


@pytest.mark.parametrize(
    "argv",
    [
        ["complexity", "--n-max", "20"],
        ["formula-complexity", "--n-max", "20"],
        ["power", "--n-max", "12"],
        ["repetitive", "--n-max", "9"],
        ["repulsive", "--n-max", "12", "--alpha", "2"],
        ["special", "--n-max", "12"],
        ["factors", "--n", "5"],
        ["classify"],
        ["verify", "--suite", "lengths,q-statement-i,r-bounds"],
    ],
)
def test_json_and_csv_agree(argv, capsys):
    base = argv + ["--l", "const:1"]
    _, js, _ = run(base + ["--format", "json"], capsys)
    _, cs, _ = run(base + ["--format", "csv"], capsys)
    doc = json.loads(js)
    assert doc["command"] == argv[0] and doc["l_spec"] == "const:1"
    rows = doc.get("rows", doc.get("reports"))
    table = list(csv.DictReader(io.StringIO(cs)))
    assert len(rows) == len(table)
    for j_row, c_row in zip(rows, table):
        for key, text in c_row.items():
            value = j_row[key]
            if value is None:
                assert text == ""
            elif isinstance(value, (dict, list)):
                assert json.loads(text) == value
            else:
                assert str(value) == text


def test_repulsive_inf(capsys):
    _, out, _ = run(["repulsive", "--l", "const:1", "--n-max", "3", "--format", "json"], capsys)
    rows = json.loads(out)["rows"]
    assert rows[0]["A_alpha"] == "inf" and rows[2]["A_alpha"] == 2


def test_verify_exit_codes(capsys):
    assert run(["verify", "--l", "const:1", "--suite", "lengths,q-statement-i"], capsys)[0] == 0
    assert run(["verify", "--l", "const:1", "--suite", "r-bounds"], capsys)[0] == 2
    code, out, _ = run(["verify", "--l", "ex4", "--suite", "q-corollary", "--format", "csv"], capsys)
    assert code == 0 and "skip,weak-zero spec" in out


@pytest.mark.parametrize("spec", ["cnst:1", "poly:1,-5", "list:1,0,0"])
def test_runtime_errors_exit_one(spec, capsys):
    code, out, err = run(["prefix", "--l", spec, "--n", "3"], capsys)
    assert (code, out) == (1, "")
    assert err.startswith("lgrig: error:")


def test_usage_errors_exit_one():
    for argv in (["bogus"], ["power", "--l", "const:1"], ["verify", "--l", "const:1", "--suite", "nope"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 1


def test_out_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    assert main(["special", "--l", "const:2", "--n-max", "3", "--format", "csv", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8").startswith("n,count,words\n1,1,a:3\n")


def test_byte_identical_subprocess():
    argv = [sys.executable, "-m", "lgrig.cli", "classify", "--l", "geom:2", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_help_mentions_defaults(capsys):
    with pytest.raises(SystemExit):
        main(["power", "--help"])
    out = capsys.readouterr().out
    assert "2^20" in out and "default 20" in out and "GRIG_MEMORY_BUDGET" in out
