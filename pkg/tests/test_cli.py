from __future__ import annotations

import json

import pytest

from sepdef.cli import main
from sepdef.fda import algebra_to_json, group_algebra, matrix_algebra, symmetric_group_3
from sepdef.pipeline import (
    CSV_COLUMNS,
    ScanOptions,
    VerifyReport,
    parse_range,
    rows_from_csv,
    rows_to_csv,
    run_verify,
    scan,
)
from sepdef.scalars import GF


def kv(out: str) -> dict:
    d = {}
    for line in out.splitlines():
        if " = " in line and not line.startswith("sample "):
            k, v = line.split(" = ", 1)
            d[k.strip()] = v.strip()
    return d


# -- pi ---------------------------------------------------------------------

def test_pi_s7(capsys):
    assert main(["pi", "--s", "7"]) == 0
    d = kv(capsys.readouterr().out)
    assert d["pi_degree"] == "48"
    assert d["pi_separable"].startswith("true")


def test_pi_s5_default_fails_with_gcd(capsys):
    assert main(["pi", "--s", "5", "--variant", "default"]) == 2
    out = capsys.readouterr().out
    assert "gcd(pi, pi') = x^12+(t^2)*x^6+1" in out


def test_pi_s5_auto_selects_fix(capsys, tmp_path):
    path = tmp_path / "pi.json"
    assert main(["pi", "--s", "5", "--json", str(path)]) == 0
    rep = json.loads(path.read_text())
    assert rep["schema"] == 1 and rep["variant"] == "s5fix" and rep["pi_separable"]


def test_force_default_flag(capsys):
    assert main(["pi", "--s", "5", "--force-default-variant"]) == 2


@pytest.mark.parametrize("argv", [["pi", "--s", "1"], ["pi"], ["pi", "--bogus"], ["frobnicate"],
                                  ["pi", "--s", "4", "--variant", "s5fix"], ["scan", "--s-range", "5..3"]])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


# -- verify -----------------------------------------------------------------

def test_verify_s2_json(capsys):
    assert main(["verify", "--s", "2", "--json", "-"]) == 0
    out = capsys.readouterr().out
    rep = json.loads(out[out.index("{"):])
    assert rep["crossed_dim"] == 6 and rep["verdict"] == "pass"
    assert [smp["radical_dim"] for smp in rep["t0_samples"]] == [0, 0, 0]
    assert rep["t0_zero_radical_dim"] >= 1


def test_verify_s3_dim(capsys):
    assert main(["verify", "--s", "3", "--samples", "1"]) == 0
    d = kv(capsys.readouterr().out)
    assert d["crossed_dim"] == "16" and d["m"] == "2"


def test_verify_s5_uses_fix(capsys):
    assert main(["verify", "--s", "5", "--samples", "1"]) == 0
    assert kv(capsys.readouterr().out)["variant"] == "s5fix"


def test_verify_rejects_nonpositive_samples(capsys):
    assert main(["verify", "--s", "2", "--samples", "0"]) == 1


def test_verify_m_override(capsys):
    assert main(["verify", "--s", "2", "--samples", "1", "--m", "3"]) == 0
    assert kv(capsys.readouterr().out)["m"] == "3"


# -- settings resolution ------------------------------------------------------

def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\ns = 2\nseed = 5\nsamples = 1\n")
    assert main(["verify", "--config", str(cfg)]) == 0
    d = kv(capsys.readouterr().out)
    assert d["s"] == "2" and d["seed"] == "5" and d["samples"] == "1"
    assert main(["verify", "--config", str(cfg), "--seed", "9"]) == 0
    assert kv(capsys.readouterr().out)["seed"] == "9"


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["pi", "--config", str(cfg)]) == 1
    assert "unknown key" in capsys.readouterr().err


def test_env_seed_below_config(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SEPDEF_SEED", "11")
    assert main(["verify", "--s", "2", "--samples", "1"]) == 0
    assert kv(capsys.readouterr().out)["seed"] == "11"
    cfg = tmp_path / "c.cfg"
    cfg.write_text("seed = 4\n")
    assert main(["verify", "--s", "2", "--samples", "1", "--config", str(cfg)]) == 0
    assert kv(capsys.readouterr().out)["seed"] == "4"


def test_env_seed_must_be_integer(capsys, monkeypatch):
    monkeypatch.setenv("SEPDEF_SEED", "abc")
    assert main(["verify", "--s", "2"]) == 1


# -- scan -------------------------------------------------------------------

def test_scan_small_range_csv(tmp_path, capsys):
    path = tmp_path / "scan.csv"
    assert main(["scan", "--s-range", "2..6", "--csv", str(path)]) == 0
    rows = rows_from_csv(path.read_text())
    assert [r["s"] for r in rows] == [2, 3, 4, 5, 6]
    assert all(r["status"] == "ok" for r in rows)
    five = rows[3]
    assert five["variant"] == "s5fix" and five["default_variant_separable"] is False
    assert capsys.readouterr().out == path.read_text()


def test_scan_csv_to_stdout_only(capsys):
    assert main(["scan", "--s-range", "2..3", "--csv", "-"]) == 0
    out = capsys.readouterr().out
    assert out.count("s,variant") == 1


def test_scan_forced_default_fails(capsys):
    assert main(["scan", "--s-range", "4..5", "--force-default-variant"]) == 2


def test_scan_parallel_matches_serial():
    opts = ScanOptions()
    assert rows_to_csv(scan(range(2, 9), opts, 1)) == rows_to_csv(scan(range(2, 9), opts, 3))


def test_scan_with_verify_column():
    rows = scan([2, 3], ScanOptions(verify=True, verify_cap=2, samples=1))
    assert rows[0]["verify_verdict"] == "pass" and rows[1]["verify_verdict"] == ""


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("7") == [7]
    with pytest.raises(ValueError):
        parse_range("4..2")


# -- radical / group ----------------------------------------------------------

def test_radical_f2s3(tmp_path, capsys):
    path = tmp_path / "s3.json"
    path.write_text(algebra_to_json(group_algebra(symmetric_group_3(), GF(2))))
    assert main(["radical", str(path)]) == 0
    d = kv(capsys.readouterr().out)
    assert d["radical_dim"] == "1" and d["components"] == "2" and d["semisimple"] == "false"


def test_radical_m2(tmp_path, capsys):
    path = tmp_path / "m2.json"
    path.write_text(algebra_to_json(matrix_algebra(2, GF(2))))
    out_json = tmp_path / "rep.json"
    assert main(["radical", str(path), "--json", str(out_json)]) == 0
    rep = json.loads(out_json.read_text())
    assert rep["radical_dim"] == 0 and rep["components"] == 1 and rep["semisimple"]


@pytest.mark.parametrize("text", ["{", '{"schema": 1}', "[]"])
def test_radical_malformed(tmp_path, capsys, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    assert main(["radical", str(path)]) == 1


def test_radical_missing_file(capsys):
    assert main(["radical", "/nonexistent/file.json"]) == 1


def test_group_check_iso_and_json(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert main(["group", "--s", "2", "--check-iso", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert "order 6" in out and "iso_ok = true" in out
    assert main(["radical", str(path)]) == 0
    assert kv(capsys.readouterr().out)["radical_dim"] == "1"


# -- reports ----------------------------------------------------------------

def test_verify_report_round_trip():
    rep = run_verify(2, samples=1)
    again = VerifyReport.from_dict(json.loads(rep.to_json()))
    assert again == rep
    assert list(rep.to_dict())[0] == "schema"
    bad = rep.to_dict()
    bad["schema"] = 99
    with pytest.raises(ValueError):
        VerifyReport.from_dict(bad)


def test_verdict_requires_nonsemisimple_special_fiber():
    rep = run_verify(2, samples=1)
    rep.t0_zero_radical_dim = 0
    assert rep.compute_verdict() == "fail"


def test_csv_round_trip():
    rows = scan([2, 3], ScanOptions())
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert rows_to_csv(rows_from_csv(text)) == text
