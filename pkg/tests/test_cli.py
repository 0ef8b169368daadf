from __future__ import annotations

import json
import typing

import pytest
from click.testing import CliRunner

from online_boosting.__version__ import __version__
from online_boosting.cli import main

if typing.TYPE_CHECKING:
    from pathlib import Path


@pytest.fixture(name="runner")
def fixture_runner() -> CliRunner:
    return CliRunner()


SIMULATE = [
    "simulate",
    "--kind", "two-phase",
    "--gamma", "0.1",
    "--excess-loss", "40",
    "--num-learners", "5",
    "--rounds", "300",
]


def test_version(runner: CliRunner) -> None:
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_run_prints_report(runner: CliRunner) -> None:
    result = runner.invoke(
        main,
        [
            "run",
            "--algorithm", "adaboost-ol",
            "--data", "synthetic:majority-vote",
            "--num-examples", "300",
            "--num-learners", "4",
            "--seed", "3",
        ],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["config"]["seed"] == 3
    assert report["examples_seen"] == 240
    assert report["schema"] == 1


def test_simulate_writes_report(runner: CliRunner, tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    result = runner.invoke(main, [*SIMULATE, "--report-out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert set(report["phases"]) == {"overall", "phase_one", "phase_two"}
    assert report["config"]["coin_phase1"] == 100


def test_several_seeds_make_a_batch(runner: CliRunner) -> None:
    result = runner.invoke(
        main, [*SIMULATE, "--algorithm", "adaboost-ol", "--seed", "1", "--seed", "2"]
    )
    assert result.exit_code == 0, result.output
    document = json.loads(result.output)
    assert [report["config"]["seed"] for report in document["reports"]] == [1, 2]


@pytest.mark.parametrize(
    "args",
    [
        ["run", "--algorithm", "online-bbm", "--data", "synthetic:majority-vote"],
        ["run", "--algorithm", "adaboost-ol", "--data", "uniform", "--gamma", "0.1"],
        ["run", "--algorithm", "boost", "--data", "uniform"],
        ["simulate", "--kind", "constant-edge", "--gamma", "0.3"],
        ["simulate", "--kind", "constant-edge", "--gamma", "0.1", "--bogus"],
        [*SIMULATE, "--jobs", "0"],
        ["simulate", "--kind", "two-phase", "--gamma", "0.1", "--excess-loss", "-40"],
    ],
)
def test_errors_exit_non_zero(runner: CliRunner, args: list[str]) -> None:
    result = runner.invoke(main, args)
    assert result.exit_code != 0
    assert result.exception is None or isinstance(result.exception, SystemExit)


def test_missing_dataset_reports_stage(runner: CliRunner, tmp_path: Path) -> None:
    result = runner.invoke(
        main,
        ["run", "--algorithm", "adaboost-ol", "--data", str(tmp_path / "missing.svm")],
    )
    assert result.exit_code == 1
    assert "stage 'load'" in result.output
