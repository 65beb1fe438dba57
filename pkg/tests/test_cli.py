import json
import re
import subprocess
import sys

import pytest

from arsig.cli import EXIT_GAP, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


WORKED_CSV = "1,0,1,1\n1,1,0,0\n0,1,0,1\n"


def test_quiver_d5_dot(capsys):
    code, out, _ = run(capsys, "quiver", "--type", "D", "--n", "5", "--emit", "dot")
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert len(re.findall(r"^\s+v\d+ \[label=", out, re.M)) == 6
    assert len(re.findall(r"->", out)) == 10
    assert 'label="M3 (2)"' in out


def test_quiver_a1_json(capsys):
    code, out, _ = run(capsys, "quiver", "--type", "A", "--n", "1", "--emit", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert len(doc["vertices"]) == 2 and len(doc["arrows"]) == 4


def test_quiver_d52_has_fifteen_nodes(capsys):
    code, out, _ = run(capsys, "quiver", "--fixture", "D52", "--emit", "dot")
    assert code == EXIT_OK
    assert len(re.findall(r"^\s+\S+ \[label=", out, re.M)) == 15
    # tau0 moves every vertex of this fixture, so it is drawn
    assert "style=dashed" in out


def test_dualfsig_single_modules(capsys):
    assert run(capsys, "dualfsig", "--type", "D", "--n", "5", "--module", "1")[1].strip() == "M1: 4/12"
    assert run(capsys, "dualfsig", "--type", "A", "--n", "9", "--module", "5")[1].strip() == "M5: 11/20"
    assert run(capsys, "dualfsig", "--type", "D", "--n", "5", "--module", "2", "--reduced")[1].strip() == "M2: 1/2"


def test_dualfsig_e8_markdown_diagram(capsys):
    code, out, _ = run(capsys, "dualfsig", "--type", "E8", "--all", "--format", "md")
    assert code == EXIT_OK
    lines = out.splitlines()
    bottom = next(l for l in lines if l.startswith("| M1:"))
    assert [c.strip() for c in bottom.strip("|").split("|")] == [
        "M1: 6/120", "M2: 18/120", "M3: 40/120", "M4: 75/120", "M5: 102/120", "M6: 80/120", "M7: 54/120",
    ]
    top = lines[lines.index(bottom) - 1]
    assert [c.strip() for c in top.strip("|").split("|")].index("M8: 72/120") == 4
    assert "R: 1/120" in out


def test_dualfsig_json_and_csv(capsys):
    code, out, _ = run(capsys, "dualfsig", "--type", "D", "--n", "5", "--all", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and [d["value"]["num"] for d in doc] == [1, 4, 6, 9, 6, 6]
    code, out, _ = run(capsys, "dualfsig", "--type", "D", "--n", "5", "--all", "--format", "csv")
    assert out.splitlines()[0].split(",")[:2] == ["label", "module"]
    assert len(out.splitlines()) == 7


def test_dualfsig_dot_is_usage_error(capsys):
    code, _, err = run(capsys, "dualfsig", "--type", "D", "--n", "5", "--all", "--format", "dot")
    assert code == EXIT_USAGE and err


def test_invariant_commands(capsys):
    assert run(capsys, "hk", "--cyclic", "8", "5")[1].strip() == "19/8"
    assert run(capsys, "hk", "--type", "E6")[1].strip() == "47/24"
    assert run(capsys, "hk", "--fixture", "D52")[1].strip() == "60/24"
    assert run(capsys, "hk", "--fixture", "D52", "--reduced")[1].strip() == "5/2"
    assert run(capsys, "mu", "--type", "E7")[1].strip() == "(1,4,6,8,6,4,2,4)"
    out = run(capsys, "fsig", "--type", "E8")[1]
    assert "M5: 6/120" in out


def test_hk_json(capsys):
    doc = json.loads(run(capsys, "hk", "--cyclic", "8", "5", "--format", "json")[1])
    assert doc["e_hk"] == {"num": 19, "den": 8}


def test_lemma_worked_table(tmp_path, capsys):
    p = tmp_path / "t.csv"
    p.write_text(WORKED_CSV)
    code, out, _ = run(capsys, "lemma", "--table", str(p))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["n"] == 2 and doc["columns"] == [1, 2, 6, 7, 5, 12] and doc["verified"]


def test_lemma_out_file_and_determinism(tmp_path, capsys):
    import random

    rnd = random.Random(6)
    rows = "\n".join(",".join(str(int(rnd.random() < 0.7)) for _ in range(6)) for _ in range(6))
    p = tmp_path / "r.csv"
    p.write_text(rows + "\n")
    outs = []
    for k in range(2):
        o = tmp_path / f"c{k}.json"
        assert run(capsys, "lemma", "--table", str(p), "--seed", "11", "--strategy", "modular", "--out", str(o))[0] == 0
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["verified"]


def test_lemma_usage_errors(tmp_path, capsys):
    empty = tmp_path / "e.csv"
    empty.write_text("")
    assert run(capsys, "lemma", "--table", str(empty))[0] == EXIT_USAGE
    bad = tmp_path / "b.csv"
    bad.write_text("1,2\n")
    assert run(capsys, "lemma", "--table", str(bad))[0] == EXIT_USAGE
    assert run(capsys, "lemma", "--table", str(tmp_path / "missing.csv"))[0] == EXIT_USAGE
    good = tmp_path / "g.csv"
    good.write_text(WORKED_CSV)
    assert run(capsys, "lemma", "--table", str(good), "--primes", "2")[0] == EXIT_USAGE


def test_replay_from_report(tmp_path, capsys):
    code, out, _ = run(capsys, "dualfsig", "--type", "D", "--n", "6", "--all", "--format", "json")
    p = tmp_path / "r.json"
    p.write_text(out)
    code, out, _ = run(capsys, "replay", "--type", "D", "--n", "6", "--module", "4", "--certificate", str(p))
    assert code == EXIT_OK and "verified 11/1" in out


def test_replay_tampered_certificate(tmp_path, capsys):
    _, out, _ = run(capsys, "dualfsig", "--type", "D", "--n", "5", "--module", "3", "--format", "json")
    doc = json.loads(out)
    doc[0]["certificate"]["trial"] = 10**6  # a different random draw
    doc[0]["certificate"]["n"] = 10  # and more copies than the bound allows
    p = tmp_path / "r.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "replay", "--type", "D", "--n", "5", "--module", "3", "--certificate", str(p))
    assert code == EXIT_GAP and "FAILED" in out


def test_replay_bad_json(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("not json")
    assert run(capsys, "replay", "--type", "D", "--n", "5", "--module", "3", "--certificate", str(p))[0] == EXIT_USAGE


def test_seed_env_fallback_and_determinism(monkeypatch, capsys):
    argv = ("dualfsig", "--type", "D", "--n", "6", "--all", "--format", "json")
    monkeypatch.setenv("AR_SIG_SEED", "5")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv, "--seed", "5")[1]
    assert a == b
    assert all(d["certificate"].get("seed") == 5 for d in json.loads(a) if d["certificate"]["strategy"] != "vacuous")


@pytest.mark.parametrize(
    "argv",
    [
        ["quiver", "--type", "D"],
        ["quiver", "--type", "D", "--n", "2"],
        ["quiver", "--type", "A", "--n", "3", "--cyclic", "4", "3"],
        ["quiver", "--fixture", "nope"],
        ["quiver"],
        ["dualfsig", "--type", "D", "--n", "5", "--module", "9"],
        ["dualfsig", "--type", "D", "--n", "5"],
        ["dualfsig", "--type", "E6", "--all", "--primes", "0"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == EXIT_OK


def test_console_script_is_byte_deterministic():
    cmd = [sys.executable, "-m", "arsig.cli", "dualfsig", "--type", "E6", "--all", "--format", "json", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)[2]["value"] == {"num": 18, "den": 24}
