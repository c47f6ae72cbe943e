from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from qpmckay.cli import main, parse_word


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_word():
    assert parse_word("0p,1, 2") == ("0'", "1", "2")
    assert parse_word("") == ()


def test_verify_all_d14(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--family", "D", "--n", "7")
    assert code == 0
    assert "QPs: 4 (expected 4)" in out
    assert "chambers: 4 (OK)" in out
    assert "involution/reduce: OK" in out
    assert "serialization: OK" in out
    assert "flop-graph: OK" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "T", "--emit", "json")
    report = json.loads(out)
    assert code == 0 and report["qps"] == 5 and report["ok"]


def test_enumerate_tetrahedral_dot(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "T", "--emit", "dot")
    assert code == 0
    assert out.startswith("digraph") or out.startswith("graph")
    assert out.count("label=") >= 5


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "D", "--n", "6", "--emit", "json")
    assert code == 0
    assert len(json.loads(out)["nodes"]) == 16


def test_mutate_d12(capsys):
    code, out, _ = run(capsys, "mutate", "--family", "D", "--n", "6", "--word", "0p")
    assert code == 0
    data = json.loads(out)
    assert data["word"] == ["0'"]
    assert set(data["eliminated"]) == {"C", "[D0A]", "[D0d0]", "[ad0]", "c", "u1"}


def test_mutate_roundtrip_through_json(capsys, monkeypatch, tmp_path):
    _, first, _ = run(capsys, "mckay", "--family", "D", "--n", "5")
    path = tmp_path / "qp.json"
    path.write_text(first)
    _, again, _ = run(capsys, "mckay", "--from-json", str(path))
    assert json.loads(again) == json.loads(first)
    monkeypatch.setattr(sys, "stdin", io.StringIO(first))
    code, out, _ = run(capsys, "mutate", "--from-json", "-", "--word", "0p")
    assert code == 0 and json.loads(out)["word"] == ["0'"]


def test_group_table(capsys):
    code, out, _ = run(capsys, "group", "--family", "T")
    assert code == 0
    assert len(out.strip().splitlines()) == 5
    code, out, _ = run(capsys, "group", "--family", "I", "--emit", "classes")
    assert code == 0
    assert sum(int(line.split("\t")[1]) for line in out.strip().splitlines()) == 60


def test_chambers(capsys):
    code, out, _ = run(capsys, "chambers", "--family", "T", "--resolution", "1,2")
    assert code == 0
    assert len(out.strip().splitlines()) == 3
    code, out, _ = run(capsys, "chambers", "--family", "D", "--n", "7", "--resolution", "0p,1", "--emit", "json")
    data = json.loads(out)
    assert data["skeletonAgrees"] is True
    assert len(data["strict"]) == 4


def test_dualgraph(capsys, tmp_path):
    target = tmp_path / "g.dot"
    code, out, _ = run(capsys, "dualgraph", "--family", "T", "--word", "1,2,3", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("graph dual")
    code, out, _ = run(capsys, "dualgraph", "--family", "D", "--n", "7", "--emit", "json")
    assert [n["id"] for n in json.loads(out)["nodes"]] == ["0'", "1", "2", "3"]


def test_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "enumerate", "--family", "O")
    assert code == 1 and err.startswith("UnsupportedParam")
    code, _, err = run(capsys, "mutate", "--family", "D", "--n", "7", "--word", "1")
    assert code == 1 and err.startswith("LoopAtVertex")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mutate", "--family", "D", "--n", "7", "--word", "9"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--family", "D"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qpmckay", "verify", "--family", "C", "--n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "QPs: 1 (expected 1)" in proc.stdout
