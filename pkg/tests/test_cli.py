import json

import pytest

from pittka.acceptance import VerificationReport
from pittka.cli import run_command


def test_pitt_sharp(capsys):
    assert run_command(["pitt-sharp", "--beta", "0.5", "--lambda", "0", "--a", "2"]) == 0
    assert float(capsys.readouterr().out.split()[-1]) == pytest.approx(2.092099240106203, rel=1e-8)


def test_domain_error_exit_code(capsys):
    assert run_command(["pitt-sharp", "--beta", "1", "--lambda", "0", "--a", "2"]) == 2
    assert "outside" in capsys.readouterr().err


def test_usage_errors():
    assert run_command(["bogus"]) == 2
    assert run_command(["pitt-sharp"]) == 2


def test_transform_csv(tmp_path):
    out = tmp_path / "t.csv"
    assert run_command(["transform", "--f", "gauss", "--rho", "0,1,2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "rho,value,error_estimate" and len(lines) == 4


def test_transform_stdout(capsys):
    assert run_command(["transform", "--f", "gauss", "--rho", "1"]) == 0
    assert capsys.readouterr().out.startswith("rho,value,error_estimate")


def test_kernel_sweep_csv(tmp_path):
    out = tmp_path / "k.csv"
    assert run_command(["kernel-sweep", "--k", "0.25", "--t-max", "10", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "k,a,t,value"


def test_find_k0(capsys):
    assert run_command(["find-k0", "--tol", "1e-4"]) == 0
    assert "0.438" in capsys.readouterr().out


def test_pitt_verify_json(tmp_path):
    out = tmp_path / "v.json"
    assert run_command(["pitt-verify", "--beta", "0.3", "--lambda", "0.5", "--f", "gauss", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["admissible"] and data["cases"][0]["pass"]


def test_report_roundtrip_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_command(["report", "--criteria", "1", "8", "--out", str(a)]) == 0
    assert run_command(["report", "--criteria", "1", "8", "--out", str(b), "--threads", "1"]) == 0
    ra = VerificationReport.from_json(a.read_text())
    rb = VerificationReport.from_json(b.read_text())
    assert set(json.loads(a.read_text())) == {"suite", "cases", "summary", "meta"}
    assert ra.to_json() == VerificationReport.from_json(ra.to_json()).to_json()
    assert [c.id for c in ra.cases] == [c.id for c in rb.cases]
    assert [c.actual for c in ra.cases] == [c.actual for c in rb.cases]


def test_report_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("criteria = 8\nthreads = 2\n")
    assert run_command(["report", "--config", str(cfg)]) == 0
    assert "criterion 8" in capsys.readouterr().out
