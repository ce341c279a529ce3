import json

import pytest

from efo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_equiv_true_false_error(capsys):
    code, out, _ = run(capsys, "equiv", "rrr", "rrrr", "-n", "2")
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run(capsys, "equiv", "rr", "rrr", "-n", "2")
    assert (code, out.strip()) == (1, "false")
    code, _, err = run(capsys, "equiv", "rr", "x", "-n", "2")
    assert code == 2
    assert "unknown glyph" in err


def test_usage_error_is_exit_2(capsys):
    assert run(capsys, "equiv", "rr")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "rr", "rrr", "-n", "2")
    assert (code, out.strip()) == (0, "I")


def test_canon_command(capsys):
    code, out, _ = run(capsys, "canon", "rrrr")
    assert (code, out.strip()) == (0, "rrr")


def test_canon_file_input(capsys, tmp_path):
    f = tmp_path / "orders.txt"
    f.write_text("# fixtures\nrrrr\nrbrb\n")
    code, out, _ = run(capsys, "canon", "--file", str(f))
    assert code == 0
    assert out.splitlines() == ["rrr", "rbrb"]


def test_chars_json(capsys):
    code, out, _ = run(capsys, "chars", "rb", "-n", "1", "--json")
    assert code == 0
    report = json.loads(out)
    assert [r["position"] for r in report] == [1, 2]
    assert report[0]["right"]["representative"] == "b"


def test_enumerate_summary(capsys, tmp_path):
    json_path = tmp_path / "cat.json"
    csv_path = tmp_path / "cat.csv"
    code, out, _ = run(
        capsys, "enumerate", "-m", "2", "--json", str(json_path), "--csv", str(csv_path)
    )
    assert code == 0
    assert "classes: 97 total, 90 using all 2 colours" in out
    doc = json.loads(json_path.read_text())
    assert doc["header"]["classes"] == 97
    assert csv_path.read_text().splitlines()[0].startswith("pattern,")


def test_debruijn_command(capsys):
    code, out, _ = run(capsys, "debruijn", "-m", "2", "-k", "5")
    assert code == 0
    assert len(out.strip()) == 32


def test_digraph_dot_output(capsys, tmp_path):
    dot_path = tmp_path / "d.dot"
    code, out, _ = run(capsys, "digraph", "rbrbr", "-k", "3", "--dot", str(dot_path))
    assert code == 0
    assert dot_path.read_text().startswith("digraph windows {")
    code, out, _ = run(capsys, "digraph", "rbrbr", "-k", "3")
    assert '"rb" -> "br"' in out


def test_verify_len70(capsys):
    code, out, _ = run(capsys, "verify", "len70")
    assert code == 0
    assert "70 distinct 2-characters: PASS" in out


def test_verify_counts2(capsys):
    code, out, _ = run(capsys, "verify", "counts2")
    assert code == 0
    assert "= 90: PASS" in out


def test_verify_len74(capsys):
    code, out, _ = run(capsys, "verify", "len74")
    assert code == 0
    assert "min covering walk = 36: PASS" in out


def test_verify_len74_json_certificate(capsys):
    code, out, _ = run(capsys, "verify", "len74", "--json")
    assert code == 0
    cert = json.loads(out)
    assert cert["passed"] is True
    assert cert["mode"] == "covering-walk"
    assert len(cert["checks"]) == 5


def test_verify_unknown_name(capsys):
    code, _, err = run(capsys, "verify", "len75")
    assert code == 2
    assert "unknown example" in err


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("EFO_BUDGET", "10")
    code, _, err = run(capsys, "debruijn", "-m", "2", "-k", "5")
    assert code == 2
    assert "budget" in err
    monkeypatch.delenv("EFO_BUDGET")
    assert run(capsys, "debruijn", "-m", "2", "-k", "5")[0] == 0
