from __future__ import annotations

import math

import pytest

from online_boosting.core import Example, FeedMode, Label, RngHandle
from online_boosting.exceptions import ContractViolation, InvalidProbability
from online_boosting.weak_learners import (
    CoinLearner,
    ConstantSchedule,
    LinearLearner,
    SimulationOracle,
    StumpLearner,
    TwoPhaseSchedule,
    WeakLearner,
    feed,
    sampled_feed,
    weighted_feed,
)
from tests.utils import FixedLearner

PROBES = [{}, {0: -1.0}, {0: 0.5}, {0: 3.0}, {1: 2.0}, {0: 1.0, 1: -1.0}]


@pytest.fixture(name="trained_stump")
def fixture_trained_stump() -> StumpLearner:
    stump = StumpLearner()
    stump.update({0: 2.0}, Label.POSITIVE, 1.0)
    stump.update({0: 0.0}, Label.NEGATIVE, 1.0)
    return stump


@pytest.mark.parametrize(
    "learner", [StumpLearner(), LinearLearner(), CoinLearner(ConstantSchedule(1.0), RngHandle(0))]
)
def test_learners_satisfy_protocol(learner: object) -> None:
    assert isinstance(learner, WeakLearner)


@pytest.mark.parametrize("features", PROBES)
def test_fresh_stump_predicts_positive(features: dict) -> None:
    assert StumpLearner().predict(features) is Label.POSITIVE


def test_stump_midpoint_rule(trained_stump: StumpLearner) -> None:
    assert trained_stump.best_feature == 0
    assert trained_stump.class_means()[:, 0].tolist() == [0.0, 2.0]
    assert trained_stump.predict({0: 3.0}) is Label.POSITIVE
    assert trained_stump.predict({0: 0.5}) is Label.NEGATIVE


def test_stump_zero_weight_is_noop(trained_stump: StumpLearner) -> None:
    before = [trained_stump.predict(x) for x in PROBES]
    trained_stump.update({0: -10.0, 1: 4.0}, Label.POSITIVE, 0.0)
    assert [trained_stump.predict(x) for x in PROBES] == before


def test_stump_single_update() -> None:
    stump = StumpLearner()
    stump.update({0: 1.0}, Label.POSITIVE, 1.0)
    assert stump.predict({0: 1.0}) is Label.POSITIVE


def test_stump_halves_match_whole_on_one_feature() -> None:
    stream = [
        ({0: 1.0}, Label.NEGATIVE),
        ({0: 3.0}, Label.POSITIVE),
        ({0: 0.5}, Label.NEGATIVE),
        ({0: 2.5}, Label.POSITIVE),
        ({0: 1.5}, Label.NEGATIVE),
    ]
    halves, whole = StumpLearner(), StumpLearner()
    for features, label in stream:
        halves.update(features, label, 0.5)
        halves.update(features, label, 0.5)
        whole.update(features, label, 1.0)
        assert [halves.predict(x) for x in PROBES] == [whole.predict(x) for x in PROBES]


def test_stump_late_feature_counts_negatives_so_far() -> None:
    stump = StumpLearner()
    stump.update({0: 1.0}, Label.NEGATIVE, 1.0)
    stump.update({3: 1.0}, Label.POSITIVE, 1.0)
    assert stump.mistakes.tolist() == [1.0, 1.0, 1.0, 1.0]


def test_stump_finds_informative_feature() -> None:
    stump = StumpLearner()
    rng = RngHandle(5).generator
    for _ in range(400):
        label = Label.POSITIVE if rng.random() < 0.5 else Label.NEGATIVE
        features = {0: float(rng.normal()), 1: float(label) * 2 + float(rng.normal()) * 0.1}
        stump.update(features, label, 1.0)

    assert stump.best_feature == 1
    assert stump.predict({1: 2.0}) is Label.POSITIVE
    assert stump.predict({1: -2.0}) is Label.NEGATIVE


def test_stump_rejects_invalid_weight() -> None:
    with pytest.raises(InvalidProbability):
        StumpLearner().update({0: 1.0}, Label.POSITIVE, 1.5)


def test_linear_fresh_predicts_positive() -> None:
    assert LinearLearner().predict({0: -5.0}) is Label.POSITIVE


def test_linear_zero_weight_is_noop() -> None:
    learner = LinearLearner()
    learner.update({0: 1.0}, Label.NEGATIVE, 0.0)
    assert learner.weights == {}
    assert learner.bias == 0.0
    assert learner.updates == 0


def test_linear_first_step() -> None:
    learner = LinearLearner(learning_rate=0.5)
    learner.update({0: 2.0}, Label.POSITIVE, 0.5)
    # 0.5 / sqrt(1) * 0.5 * (+1) * expit(0) = 0.125
    assert learner.weights == {0: pytest.approx(0.25)}
    assert learner.bias == 0.0


def test_linear_first_step_with_bias() -> None:
    learner = LinearLearner(learning_rate=0.5, fit_bias=True)
    learner.update({0: 2.0}, Label.POSITIVE, 0.5)
    assert learner.bias == pytest.approx(0.125)
    assert learner.weights == {0: pytest.approx(0.25)}


def test_linear_empty_example_scores_zero() -> None:
    learner = LinearLearner()
    for _ in range(20):
        learner.update({0: 1.0}, Label.NEGATIVE, 1.0)
    assert learner.margin({}) == 0.0
    assert learner.predict({}) is Label.POSITIVE
    assert learner.predict({0: 1.0}) is Label.NEGATIVE

    biased = LinearLearner(fit_bias=True)
    for _ in range(20):
        biased.update({0: 1.0}, Label.NEGATIVE, 1.0)
    assert biased.predict({}) is Label.NEGATIVE


def test_linear_learns_direction() -> None:
    learner = LinearLearner()
    for _ in range(50):
        learner.update({0: 1.0}, Label.NEGATIVE, 1.0)
    assert learner.predict({0: 1.0}) is Label.NEGATIVE
    assert learner.margin({0: 1.0}) < 0


def test_linear_rejects_non_positive_rate() -> None:
    with pytest.raises(ValueError):  # noqa: PT011
        LinearLearner(learning_rate=0.0)


def _coin(schedule: ConstantSchedule | TwoPhaseSchedule, seed: int = 0) -> CoinLearner:
    return CoinLearner(schedule, RngHandle(seed))


def test_coin_always_right() -> None:
    coin = _coin(ConstantSchedule(1.0))
    assert all(
        coin.predict_label(t, Label.NEGATIVE) is Label.NEGATIVE for t in range(1, 200)
    )


def test_coin_mistake_rate() -> None:
    gamma, n = 0.1, 100_000
    coin = _coin(ConstantSchedule.with_edge(gamma), seed=3)
    wrong = sum(coin.predict_label(t, Label.POSITIVE) is Label.NEGATIVE for t in range(1, n + 1))
    assert abs(wrong / n - 0.3) <= 3 * math.sqrt(0.3 * 0.7 / n)


def test_two_phase_schedule() -> None:
    schedule = TwoPhaseSchedule.from_excess_loss(0.1, 400)
    assert schedule.phase_one_rounds == 1000
    assert schedule.p == pytest.approx(0.7)
    assert schedule(1) == schedule(1000) == 0.5
    assert schedule(1001) == pytest.approx(0.7)

    coin = _coin(schedule, seed=9)
    wrong = sum(coin.predict_label(t, Label.POSITIVE) is Label.NEGATIVE for t in range(1, 1001))
    assert abs(wrong / 1000 - 0.5) <= 3 / (2 * math.sqrt(1000))


@pytest.mark.parametrize("gamma", [0.0, 0.25, -0.1])
def test_two_phase_rejects_gamma(gamma: float) -> None:
    with pytest.raises(ValueError):  # noqa: PT011
        TwoPhaseSchedule.from_excess_loss(gamma, 100)


def test_schedules_reject_invalid_probability() -> None:
    with pytest.raises(InvalidProbability):
        ConstantSchedule(1.2)
    with pytest.raises(ValueError):  # noqa: PT011
        TwoPhaseSchedule(-1, 0.6)


def test_coin_requires_simulation() -> None:
    coin = _coin(ConstantSchedule(0.7))
    with pytest.raises(ContractViolation):
        coin.predict({})

    oracle = SimulationOracle()
    simulated = CoinLearner.for_simulation(oracle, ConstantSchedule(0.7), RngHandle(0))
    with pytest.raises(ContractViolation):
        simulated.predict({})


def test_coin_one_draw_per_round() -> None:
    oracle = SimulationOracle()
    coin = CoinLearner.for_simulation(oracle, ConstantSchedule(0.5), RngHandle(1))
    stream = [Example({}, Label.POSITIVE)] * 300
    for example in oracle.track(stream):
        first = coin.predict(example.features)
        assert all(coin.predict(example.features) is first for _ in range(3))
    assert oracle.round == 300
    with pytest.raises(ContractViolation):
        oracle.label  # noqa: B018


def test_coin_update_tracks_weight() -> None:
    coin = _coin(ConstantSchedule(0.7))
    coin.update({}, Label.POSITIVE, 0.25)
    coin.update({}, Label.POSITIVE, 0.5)
    assert coin.fed_weight == 0.75


def test_sampled_feed_extremes() -> None:
    learner = FixedLearner(1)
    rng = RngHandle(0)
    assert all(sampled_feed(learner, {}, Label.POSITIVE, 1.0, rng) for _ in range(100))
    assert not any(sampled_feed(learner, {}, Label.POSITIVE, 0.0, rng) for _ in range(100))
    assert learner.updates == [(Label.POSITIVE, 1.0)] * 100


def test_sampled_feed_frequency() -> None:
    learner = FixedLearner(1)
    rng = RngHandle(4)
    n = 10_000
    for _ in range(n):
        sampled_feed(learner, {}, Label.NEGATIVE, 0.5, rng)
    assert abs(len(learner.updates) - n / 2) <= 3 * math.sqrt(n * 0.25)


def test_feed_dispatch() -> None:
    weighted, sampled = FixedLearner(1), FixedLearner(1)
    feed(FeedMode.WEIGHTED, weighted, {}, Label.POSITIVE, 0.3, RngHandle(0))
    feed(FeedMode.SAMPLED, sampled, {}, Label.POSITIVE, 1.0, RngHandle(0))
    assert weighted.updates == [(Label.POSITIVE, 0.3)]
    assert sampled.updates == [(Label.POSITIVE, 1.0)]


@pytest.mark.parametrize("p", [-0.5, 2.0])
def test_feeds_reject_invalid_probability(p: float) -> None:
    with pytest.raises(InvalidProbability):
        weighted_feed(FixedLearner(1), {}, Label.POSITIVE, p)
    with pytest.raises(InvalidProbability):
        sampled_feed(FixedLearner(1), {}, Label.POSITIVE, p, RngHandle(0))
