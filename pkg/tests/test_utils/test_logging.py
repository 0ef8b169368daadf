import logging

import pytest

from online_boosting.harness.config import ExperimentConfig
from online_boosting.harness.experiment import run_experiment
from online_boosting.utils.logging import configure_logging
from tests.utils import override_log_level


def _run(algorithm: str) -> None:
    run_experiment(
        ExperimentConfig(
            algorithm=algorithm,
            data="synthetic:majority-vote",
            num_learners=3,
            gamma=0.1 if algorithm == "online-bbm" else None,
            num_examples=40,
            checkpoint_interval=16,
        )
    )


def test_logs_debug(capsys: pytest.CaptureFixture) -> None:
    with override_log_level("debug"):
        _run("online-bbm")

    stderr = capsys.readouterr().err
    assert "stage load" in stderr
    assert "stage evaluate" in stderr
    assert "checkpoint examples=16" in stderr
    assert "checkpoint examples=32" in stderr
    assert "experiment_done" in stderr
    assert "potential_round" not in stderr


@pytest.mark.parametrize(
    ("algorithm", "event"),
    [("online-bbm", "potential_round t=1 "), ("adaboost-ol", "adaboost_ol_round t=1 ")],
)
def test_logs_trace(capsys: pytest.CaptureFixture, algorithm: str, event: str) -> None:
    with override_log_level("trace"):
        _run(algorithm)

    stderr = capsys.readouterr().err
    assert "stage train" in stderr
    assert event in stderr
    assert "TRACE" in stderr


def test_silent_by_default(capsys: pytest.CaptureFixture) -> None:
    _run("adaboost-ol")
    assert capsys.readouterr().err == ""


def test_configure_logging_rejects_level() -> None:
    with pytest.raises(ValueError, match="Unsupported log level"):
        configure_logging("info")


def test_configure_logging_replaces_handler() -> None:
    logger = logging.getLogger("online_boosting")
    with override_log_level("debug"):
        configure_logging("trace")
        configure_logging("debug")
        assert len(logger.handlers) == 1
        assert logger.level == logging.DEBUG
