import json

import pytest

from kneading.cli import RunConfig, UsageError, main, parse_range


def test_parse_range():
    assert parse_range("1..5") == [1, 2, 3, 4, 5]
    assert parse_range("2,4") == [2, 4]
    assert parse_range("3") == [3]
    with pytest.raises(UsageError):
        parse_range("5..1")
    with pytest.raises(UsageError):
        parse_range("x")


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("build", cutoff_fraction=1.5)
    with pytest.raises(UsageError):
        RunConfig("analyze", length=100)
    with pytest.raises(UsageError):
        RunConfig("plot")


def test_build_is_deterministic_and_regenerable(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    args = ["--alpha", "2", "--beta", "3", "--n", "3", "--m", "2", "--length", "20000"]
    assert main(["build", *args, "--out", str(a)]) == 0
    assert main(["build", *args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.txt"
    assert main(["build", "--params", str(a) + ".json", "--length", "20000", "--out", str(c)]) == 0
    assert c.read_bytes() == a.read_bytes()
    assert set(a.read_text()) <= {"0", "1"} and len(a.read_text()) == 20000


def test_analyze_with_sidecar(tmp_path):
    k = tmp_path / "k.txt"
    main(["build", "--n", "2", "--m", "3", "--length", "50000", "--out", str(k)])
    out = tmp_path / "r.json"
    assert main(["analyze", "--prefix", str(k), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["cross_check"]["ok"] and rep["cutoff"] == 25000


def test_verify_claims_matrix(tmp_path, capsys):
    code = main(["verify-claims", "--alpha", "1", "--beta", "1", "--n", "1..3", "--m", "1..3",
                 "--length", "60000"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0 and rep["ok"]
    row = rep["matrix"]["alpha=1,beta=1"]
    assert row["n=1"]["m=2"] == "infeasible" and row["n=2"]["m=1"] == "infeasible"
    assert row["n=3"]["m=3"] == "pass"


def test_feasibility_alpha_zero(capsys):
    assert main(["feasibility", "--alpha", "0", "--beta", "0..1", "--n", "1..3", "--m", "1..3"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    for r in rows:
        assert r["feasible"] == (r["beta"] == "0" and r["n"] == r["m"])


def test_find_param(capsys):
    assert main(["find-param", "--q", "1.75", "--length", "40"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["q_lo"] <= 1.75 <= rec["q_hi"]


def test_usage_errors(tmp_path, capsys):
    assert main(["build", "--n", "x"]) == 2
    assert main(["build", "--length", "1000"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("011011011")
    assert main(["find-param", "--prefix", str(bad)]) == 2
    assert main(["build", "--alpha", "1", "--n", "1", "--m", "2", "--out", str(bad)]) == 2
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code == 2
