"""Command-line tests using click's CliRunner"""
import json

import pytest
from click.testing import CliRunner

import app
from core.state import CheckResult, VerificationReport


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(app.cli, list(args))


def test_info_json(runner):
    result = invoke(runner, "info", "--type", "G", "--rank", "2")
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["schema_version"] == 1
    assert data["dim_X"] == 5 and data["dim_Y"] == 4
    assert data["phi_aleph"] == ["a2"]
    assert data["betti"] == [1, 1, 2, 1, 1]
    assert data["degree_Y"] == 18


def test_info_text(runner):
    result = invoke(runner, "info", "--type", "c", "--rank", "3", "--variant", "qm", "--format", "text")
    assert result.exit_code == 0, result.output
    assert "fixed_points: 12" in result.stdout


def test_hasse_dot_for_c3(runner):
    result = invoke(runner, "hasse", "--type", "C", "--rank", "3", "--variant", "quasi-minuscule")
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0].startswith("digraph ") and lines[-1] == "}"
    assert sum(1 for line in lines if "[label=" in line) == 12


def test_hasse_dot_marks_new_edges(runner):
    result = invoke(runner, "hasse", "--type", "G", "--rank", "2")
    red = [line for line in result.stdout.splitlines() if "color=red" in line]
    # coefficient-3 red edges drawn three times each
    assert len(red) == 6
    assert '  "3a1+a2" -> "-a2" [color=red];' in red


def test_output_is_deterministic(runner):
    first = invoke(runner, "middle", "--type", "F", "--rank", "4")
    second = invoke(runner, "middle", "--type", "F", "--rank", "4")
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout


def test_chevalley_tsv(runner):
    result = invoke(runner, "chevalley", "--type", "G", "--rank", "2", "--format", "tsv")
    header, *rows = result.stdout.splitlines()
    assert header.split("\t")[0] == "h."
    assert len(rows) == 6


def test_cup_single_product(runner):
    result = invoke(runner, "cup", "--type", "G", "--rank", "2", "--alpha", "3a1+a2", "--beta", "a2")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["product"] == {"-3a1-a2": "3"}


def test_pairing_tsv_needs_degree(runner):
    result = invoke(runner, "pairing", "--type", "G", "--rank", "2", "--format", "tsv")
    assert result.exit_code == 2
    assert "error: UnsupportedContextError" in result.stderr


def test_spectrum_with_q_value(runner):
    result = invoke(runner, "spectrum", "--type", "G", "--rank", "2", "--operator", "EX", "--q", "1")
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["shape"]["P"] == ["1", "-18", "-27"]


def test_spectrum_rejects_unknown_parameter(runner):
    result = invoke(runner, "spectrum", "--type", "G", "--rank", "2", "--q", "q9=2")
    assert result.exit_code == 2


def test_sigma(runner):
    result = invoke(runner, "sigma", "--type", "G", "--rank", "2")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["lambda0"] == "-3/2"


@pytest.mark.parametrize("args", [
    ("info", "--type", "E", "--rank", "6"),
    ("info", "--type", "D", "--rank", "3"),
    ("equivariant", "--type", "G", "--rank", "2", "--alpha", "a1"),
    ("sigma", "--type", "C", "--rank", "3", "--variant", "quasi-minuscule"),
])
def test_errors_exit_with_status_two(runner, args):
    result = invoke(runner, *args)
    assert result.exit_code == 2
    assert result.stderr.startswith("error: ")


def test_output_file(runner, tmp_path, monkeypatch):
    monkeypatch.setattr(app.Settings, "OUTPUT_DIR", str(tmp_path))
    result = invoke(runner, "quantum", "--type", "G", "--rank", "2", "-o", "g2_ey.json")
    assert result.exit_code == 0, result.output
    document = json.loads((tmp_path / "g2_ey.json").read_text(encoding="utf-8"))
    assert document["operator"] == "E_Y"


def test_verify_failure_exit_code(runner, monkeypatch):
    failing = VerificationReport(
        context="G2 adjoint",
        success=False,
        checks=[CheckResult(name="poset", status="failed", error_message="ConsistencyError: broken")],
    )
    monkeypatch.setattr(app.VerifyOrchestrator, "verify", lambda self, ctx: failing)
    result = invoke(runner, "verify", "--type", "G", "--rank", "2")
    assert result.exit_code == 1
    assert "FAIL" in result.stdout and "broken" in result.stdout
