from __future__ import annotations

import typing

import pytest

from online_boosting.core import FeedMode
from online_boosting.exceptions import ConfigError
from online_boosting.harness.config import (
    Algorithm,
    DataFormat,
    ExperimentConfig,
    WeakLearnerKind,
)


def make(**overrides: typing.Any) -> ExperimentConfig:
    options: dict[str, typing.Any] = {
        "algorithm": Algorithm.ADABOOST_OL,
        "data": "synthetic:noisy-copies",
    }
    options.update(overrides)
    return ExperimentConfig(**options)


def test_defaults() -> None:
    config = make()
    assert config.weak_learner is WeakLearnerKind.STUMP
    assert config.data_format is DataFormat.SVMLIGHT
    assert config.split == 0.8
    assert config.resolved_feed_mode is FeedMode.WEIGHTED
    assert config.is_generated


def test_string_values_are_coerced() -> None:
    config = make(algorithm="online-bbm", gamma=0.1, weak_learner="linear", feed_mode="sampled")
    assert config.algorithm is Algorithm.ONLINE_BBM
    assert config.weak_learner is WeakLearnerKind.LINEAR
    assert config.resolved_feed_mode is FeedMode.SAMPLED


@pytest.mark.parametrize(
    ("overrides", "message"),
    [
        ({"algorithm": "online-bbm"}, "requires gamma"),
        ({"algorithm": "online-bbm", "gamma": 0.5}, "gamma must lie"),
        ({"gamma": 0.1}, "does not accept gamma"),
        ({"algorithm": "adaboost-ol-s", "gamma": 0.1}, "does not accept gamma"),
        ({"algorithm": "adaboost-ol-s", "feed_mode": "weighted"}, "always samples"),
        ({"algorithm": "baseline"}, "exactly one"),
        ({"algorithm": "bogus"}, "Unknown algorithm"),
        ({"weak_learner": "tree"}, "Unknown weak learner"),
        ({"num_learners": 0}, "num_learners"),
        ({"split": 1.0}, "split"),
        ({"split": 0.0}, "split"),
        ({"checkpoint_interval": 0}, "checkpoint_interval"),
        ({"weak_learner": "coin", "coin_p": 0.7}, "uniform"),
        ({"weak_learner": "coin", "data": "uniform"}, "coin_p"),
        ({"weak_learner": "coin", "data": "uniform", "coin_p": 1.5}, "coin_p"),
        ({"coin_p": 0.7}, "only apply to coin"),
        ({"zero_based": "maybe"}, "zero_based"),
        ({"seed": -1}, "seed"),
    ],
)
def test_invalid(overrides: dict[str, typing.Any], message: str) -> None:
    with pytest.raises(ConfigError, match=message):
        make(**overrides)


def test_sampled_variant_defaults_to_sampling() -> None:
    config = make(algorithm="adaboost-ol-s")
    assert config.feed_mode is None
    assert config.resolved_feed_mode is FeedMode.SAMPLED
    assert make(algorithm="adaboost-ol-s", feed_mode="sampled").resolved_feed_mode is (
        FeedMode.SAMPLED
    )


def test_coin_config() -> None:
    config = make(weak_learner="coin", data="uniform", coin_p=0.7, coin_phase1=100)
    assert config.is_generated
    assert config.coin_phase1 == 100


@pytest.mark.parametrize(
    ("interval", "total", "expected"),
    [(None, 1000, 10), (None, 1001, 11), (None, 5, 1), (7, 1000, 7)],
)
def test_checkpoint_every(interval: int | None, total: int, expected: int) -> None:
    assert make(checkpoint_interval=interval).checkpoint_every(total) == expected


def test_to_dict_uses_plain_values() -> None:
    config = make(seed=3).with_seed(9)
    document = config.to_dict()
    assert document["algorithm"] == "adaboost-ol"
    assert document["weak_learner"] == "stump"
    assert document["seed"] == 9
    assert document["feed_mode"] is None
