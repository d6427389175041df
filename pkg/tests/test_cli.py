import json

import pytest

from holey.certify import read_certificate, verify, write_certificate
from holey.cli import main


def test_check_admissible(capsys):
    assert main(["check", "9", "9", "19"]) == 0
    out = capsys.readouterr().out
    assert "admissible: True" in out


def test_check_inadmissible_exit_code(capsys):
    assert main(["check", "9", "4", "12"]) == 2
    out = capsys.readouterr().out
    assert "n1: FAIL" in out


def test_nu(capsys):
    assert main(["nu", "9", "5"]) == 0
    assert capsys.readouterr().out.strip() == "11"


def test_construct_writes_verifiable_file(tmp_path):
    path = tmp_path / "c.json"
    assert main(["construct", "9", "9", "19", "--seed", "1",
                 "-o", str(path)]) == 0
    cert = read_certificate(str(path))
    assert verify(cert).ok and len(cert.cycles) == 15


def test_construct_not_admissible_exit_code(capsys):
    assert main(["construct", "9", "5", "7"]) == 2


def test_construct_out_of_range_exit_code(capsys):
    assert main(["construct", "17", "19", "33"]) == 2


def test_construct_budget_exhausted_exit_code(capsys):
    assert main(["construct", "9", "17", "23", "--budget", "0.001"]) == 3


def test_construct_stdout_json(capsys):
    assert main(["construct", "9", "5", "11", "--seed", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1 and len(payload["cycles"]) == 5


def test_verify_good_and_corrupt(tmp_path, capsys):
    path = tmp_path / "c.json"
    main(["construct", "9", "5", "11", "-o", str(path)])
    capsys.readouterr()
    assert main(["verify", str(path)]) == 0
    payload = json.loads(path.read_text())
    payload["cycles"] = payload["cycles"][1:]
    path.write_text(json.dumps(payload))
    capsys.readouterr()
    assert main(["verify", str(path)]) == 4
    assert "FAIL" in capsys.readouterr().out


def test_verify_parse_error_exit_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["verify", str(path)]) == 4


def test_verify_plain_text(tmp_path, capsys):
    path = tmp_path / "c.json"
    main(["construct", "9", "5", "11", "-o", str(path)])
    cert = read_certificate(str(path))
    txt = tmp_path / "c.txt"
    txt.write_text("\n".join(" ".join(map(str, c)) for c in cert.cycles) + "\n")
    capsys.readouterr()
    assert main(["verify", str(txt)]) == 0


def test_search_subcommand(tmp_path):
    path = tmp_path / "s.json"
    assert main(["search", "9", "5", "11", "--seed", "2",
                 "--budget", "60", "-o", str(path)]) == 0
    assert verify(read_certificate(str(path))).ok


def test_embed_subcommand(tmp_path):
    sys_path = tmp_path / "sys.json"
    out_path = tmp_path / "emb.json"
    assert main(["construct", "9", "1", "9", "-o", str(sys_path)]) == 0
    assert main(["embed", "--system", str(sys_path), "--order", "19",
                 "-o", str(out_path)]) == 0
    base = read_certificate(str(sys_path))
    out = read_certificate(str(out_path))
    assert set(base.cycles) <= set(out.cycles)
    assert verify(out).ok


def test_embed_rejects_holed_system(tmp_path):
    sys_path = tmp_path / "holed.json"
    main(["construct", "9", "5", "11", "-o", str(sys_path)])
    assert main(["embed", "--system", str(sys_path), "--order", "21"]) == 4


def test_env_seed_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HOLEY_SEED", "7")
    assert main(["construct", "9", "5", "11"]) == 0
    first = capsys.readouterr().out
    assert main(["construct", "9", "5", "11"]) == 0
    assert capsys.readouterr().out == first


def test_env_budget_override(monkeypatch):
    monkeypatch.setenv("HOLEY_BUDGET", "0.001")
    assert main(["construct", "9", "17", "23"]) == 3
