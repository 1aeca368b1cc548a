import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from wsuper import cli_reports as cli

FIX = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    monkeypatch.setenv("WSUPER_QUIET", "1")
    monkeypatch.delenv(cli.CAP_ENV, raising=False)


def _job(tmp_path, **kw):
    job = {"algebra": {"type": "osp12n", "n": 1}, "nilpotent": {"type": "principal"},
           "D": 6, "tasks": ["describe"]}
    job.update(kw)
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    return path


@pytest.fixture(scope="module")
def golden_report():
    os.environ["WSUPER_QUIET"] = "1"
    job = cli.validate_job(json.loads((FIX / "osp12_job.json").read_text()))
    return cli.run(job)


def test_golden_fixture_matches(golden_report):
    assert cli.golden_compare(golden_report, FIX / "osp12_golden.json") == []


def test_runs_are_byte_identical(golden_report):
    job = cli.validate_job(json.loads((FIX / "osp12_job.json").read_text()))
    assert cli.canonical_json(cli.run(job)) == cli.canonical_json(golden_report)


def test_reordered_keys_give_no_diff(golden_report):
    fixture = json.loads((FIX / "osp12_golden.json").read_text())
    reordered = json.loads(json.dumps(fixture, sort_keys=False), object_pairs_hook=lambda kv: dict(kv[::-1]))
    assert cli.golden_compare(golden_report, reordered) == []


def test_changed_generator_reported_first(golden_report):
    fixture = json.loads((FIX / "osp12_golden.json").read_text())
    fixture["results"]["wgens"]["generators"][1]["theta"] = "1 * y1"
    diffs = cli.golden_compare(golden_report, fixture)
    assert len(diffs) == 1
    assert diffs[0]["path"] == ["results", "wgens", "generators", 1, "theta"]


def test_missing_fixture(golden_report, tmp_path):
    with pytest.raises(FileNotFoundError):
        cli.golden_compare(golden_report, tmp_path / "absent.json")


def test_describe_values(golden_report):
    d = golden_report["results"]["describe"]
    c = d["counters"]
    assert (c["d0"], c["d1"], c["r_parity"]) == (2, 1, "odd")
    assert d["primes"]["5"]["dim_U_m_prime"] == 10
    assert d["primes"]["5"]["delta"] == 5
    assert all(d["frame_checks"].values())


def test_zero_nilpotent_wgens(tmp_path, capsys):
    path = _job(tmp_path, algebra={"type": "gl", "m": 1, "n": 1}, nilpotent={"type": "zero"},
                D=2, tasks=["wgens"])
    assert cli.main(["run", "--spec", str(path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert len(rep["results"]["wgens"]["generators"]) == 4


def test_bounds_report(capsys):
    assert cli.main(["run", "--spec", str(FIX / "gl21_bounds_job.json")]) == 0
    rep = json.loads(capsys.readouterr().out)["results"]["bounds"]["7"]["character"]
    assert rep["p_exponent"] == rep["d0"] // 2 == 1
    assert rep["two_exponent"] == rep["d1"] // 2 == 2
    assert rep["bound"] == 28


@pytest.mark.parametrize("change", [{"tasks": []}, {"tasks": ["nope"]}, {"D": -1}, {"primes": [4]},
                                    {"primes": [2]}, {"algebra": {"type": "F4"}}, {"format": "xml"}])
def test_spec_errors_exit_2(tmp_path, change):
    path = _job(tmp_path, **change)
    assert cli.main(["run", "--spec", str(path)]) == 2


def test_missing_spec_file_exit_2(tmp_path):
    assert cli.main(["run", "--spec", str(tmp_path / "none.json")]) == 2


def test_task_failure_isolated_exit_3(tmp_path, capsys):
    path = _job(tmp_path, D=8, primes=[5], tasks=["describe", "tensorcheck"])
    assert cli.main(["run", "--spec", str(path)]) == 3
    rep = json.loads(capsys.readouterr().out)
    assert rep["errors"]["tensorcheck"]["minimal_sufficient_D"] == 10
    assert "describe" in rep["results"]


def test_degree_cap_from_environment(tmp_path, monkeypatch, capsys):
    path = _job(tmp_path, D=10, tasks=["relations"])
    monkeypatch.setenv(cli.CAP_ENV, "2")
    assert cli.main(["run", "--spec", str(path)]) == 3
    rep = json.loads(capsys.readouterr().out)
    assert rep["job"]["D"] == 2
    assert rep["errors"]["relations"]["minimal_sufficient_D"] == 4
    monkeypatch.setenv(cli.CAP_ENV, "x")
    assert cli.main(["run", "--spec", str(path)]) == 2


def test_prime_override_and_text_output(tmp_path):
    path = _job(tmp_path, primes=[5])
    out = tmp_path / "r.txt"
    assert cli.main(["run", "--spec", str(path), "--p", "7", "--format", "text", "--out", str(out)]) == 0
    text = out.read_text()
    assert "delta: 7" in text and "primes:" in text
    assert not text.lstrip().startswith("{")


def test_compare_subcommand(tmp_path, capsys, golden_report):
    rep = tmp_path / "rep.json"
    rep.write_text(cli.canonical_json(golden_report))
    assert cli.main(["compare", str(rep), str(FIX / "osp12_golden.json")]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_progress_goes_to_stderr_only(tmp_path):
    path = _job(tmp_path, tasks=["wgens"])
    env = dict(os.environ, WSUPER_QUIET="0")
    proc = subprocess.run([sys.executable, "-m", "wsuper.cli_reports", "run", "--spec", str(path)],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    json.loads(proc.stdout)
    assert "task wgens" in proc.stderr


def test_floats_rejected_in_reports():
    with pytest.raises(TypeError):
        cli.jsonable({"x": 0.5})
