import pytest
from click.testing import CliRunner

from common.utils.records import read_json
from harness.cli import main

BASE = ["--log-file", ""]


@pytest.fixture
def runner():
    return CliRunner()


def test_params_command(runner):
    result = runner.invoke(main, [*BASE, "params", "--n", "2000", "--d", "40", "--l", "2", "--u", "4", "--eps2", "0.05", "--eps3", "0.05", "--eps4", "0.05"])
    assert result.exit_code == 0, result.output
    assert "predicted_tests" in result.output
    assert "4674456" in result.output


def test_probe_command(runner):
    result = runner.invoke(main, [*BASE, "probe", "--n", "6", "--d", "3", "--l", "1", "--u", "3", "--m", "3"])
    assert result.exit_code == 0, result.output
    for value in ("0.275000000000", "0.387500000000", "0.625000000000", "0.550000000000"):
        assert value in result.output


def test_probe_linear_rows(runner):
    result = runner.invoke(main, [*BASE, "probe", "--n", "200", "--d", "20", "--l", "2", "--u", "7", "--model", "linear", "--algorithm", "lin"])
    assert result.exit_code == 0, result.output
    assert "m=" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["params", "--n", "10", "--d", "4", "--l", "1", "--u", "5"],
        ["params", "--n", "10", "--d", "4", "--l", "1", "--u", "3", "--eps3", "0.1", "--I", "5"],
        ["params", "--n", "10", "--d", "4", "--l", "1", "--u", "2", "--algorithm", "lin"],
        ["params", "--n", "10", "--d", "4", "--l", "1", "--u", "3", "--model", "custom"],
        ["oracle-sweep", "--max-n", "20"],
    ],
)
def test_invalid_configuration_exits_with_2(runner, args, tmp_path):
    if args[0] == "oracle-sweep":
        args = [*args, "--out", str(tmp_path)]
    result = runner.invoke(main, [*BASE, *args])
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_params_rejects_non_monotone_table(runner, tmp_path):
    table = tmp_path / "table.json"
    table.write_text('{"2": 0.7, "3": 0.4}')
    result = runner.invoke(main, [*BASE, "params", "--n", "100", "--d", "10", "--l", "1", "--u", "4", "--model", "custom", "--table", str(table)])
    assert result.exit_code == 2
    assert "not monotone at k=3" in result.output
    assert "predicted_tests" not in result.output


def test_simulate_command(runner, tmp_path):
    out = tmp_path / "run"
    args = ["simulate", "--n", "40", "--d", "4", "--l", "1", "--u", "3", "--R", "4", "--I", "60", "--trials", "2", "--seed", "3", "--out", str(out)]
    result = runner.invoke(main, [*BASE, *args])
    assert result.exit_code == 0, result.output
    assert "exact recovery" in result.output
    summary = read_json(out / "summary.json")
    assert summary["trials"] == 2
    assert summary["config"]["R"] == 4


def test_simulate_self_check_breach_exits_with_3(runner, tmp_path):
    args = ["simulate", "--n", "40", "--d", "4", "--l", "1", "--u", "3", "--R", "4", "--I", "60", "--trials", "3", "--out", str(tmp_path), "--max-failure-rate", "0"]
    result = runner.invoke(main, [*BASE, *args])
    assert result.exit_code == 3
    assert "Self-check failed" in result.output


def test_oracle_sweep_command(runner, tmp_path):
    result = runner.invoke(main, [*BASE, "oracle-sweep", "--max-n", "6", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "0 above tolerance" in result.output
    assert (tmp_path / "oracle.jsonl").read_text().count("\n") > 0


def test_oracle_sweep_with_decode_check(runner, tmp_path):
    args = ["oracle-sweep", "--max-n", "4", "--model", "bernoulli", "--out", str(tmp_path), "--decode-trials", "3", "--I", "400", "--seed", "1"]
    result = runner.invoke(main, [*BASE, *args])
    assert result.exit_code == 0, result.output
    assert read_json(tmp_path / "exhaustive.json")["trials"] == 3
