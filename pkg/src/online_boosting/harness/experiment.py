"""End-to-end experiments: load, split, train with progressive validation, evaluate."""

from __future__ import annotations

import contextlib
import time
import typing
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..adaboost_ol import AdaBoostOL
from ..bbm import OnlineBBM
from ..core import EdgeStatistics, Label, RngHandle, RoundGuard, StreamId
from ..exceptions import ConfigError, ExperimentError
from ..utils.logging import STAGE_EXTRA, get_logger
from ..utils.misc import kvformat
from ..weak_learners import (
    CoinLearner,
    ConstantSchedule,
    LinearLearner,
    SimulationOracle,
    StumpLearner,
    TwoPhaseSchedule,
)
from .config import (
    SYNTHETIC_PREFIX,
    UNIFORM_SOURCE,
    Algorithm,
    ExperimentConfig,
    WeakLearnerKind,
)
from .data import load_dataset, split_shuffle
from .protocol import evaluate, progressive_validate
from .report import ExperimentReport
from .synthetic import generate, uniform_labels

if typing.TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Sequence

    from ..core import Booster, Example, Features
    from ..weak_learners import CoinSchedule, WeakLearner

logger = get_logger(__name__)

_In = typing.TypeVar("_In")
_Out = typing.TypeVar("_Out")


class SingleLearnerBooster:
    """One weak learner behind the booster interface, updated with every example at
    full weight."""

    def __init__(self, learner: WeakLearner) -> None:
        self.learner = learner
        self._round: RoundGuard[Label] = RoundGuard()
        self._edges = EdgeStatistics(1)
        self._mistakes = 0
        self._rounds = 0

    @property
    def mistakes(self) -> int:
        return self._mistakes

    @property
    def rounds(self) -> int:
        return self._rounds

    def predict(self, features: Features) -> Label:
        prediction = self.learner.predict(features)
        self._round.open(features, prediction)
        return prediction

    def observe(self, features: Features, label: Label) -> None:
        prediction = self._round.close(features)
        self.learner.update(features, label, 1.0)
        self._edges.record(np.ones(1), np.array([int(label) * int(prediction)]))
        self._rounds += 1
        if prediction != label:
            self._mistakes += 1

    def edge_statistics(self) -> EdgeStatistics:
        return self._edges

    def edges(self) -> np.ndarray:
        return self._edges.edges()

    def diagnostics(self) -> dict[str, typing.Any]:
        return {}


def coin_schedule(config: ExperimentConfig) -> CoinSchedule:
    if config.coin_p is None:
        raise ConfigError("Coin learners require coin_p.")
    if config.coin_phase1 is None:
        return ConstantSchedule(config.coin_p)
    return TwoPhaseSchedule(config.coin_phase1, config.coin_p)


def build_learners(
    config: ExperimentConfig, *, oracle: SimulationOracle | None = None
) -> list[WeakLearner]:
    n = config.num_learners
    if config.weak_learner is WeakLearnerKind.STUMP:
        return [StumpLearner() for _ in range(n)]
    if config.weak_learner is WeakLearnerKind.LINEAR:
        return [LinearLearner(config.learning_rate) for _ in range(n)]
    if oracle is None:
        raise ConfigError("Coin learners can only be built for a simulation oracle.")
    schedule = coin_schedule(config)
    root = RngHandle(config.seed)
    return [
        CoinLearner.for_simulation(oracle, schedule, root.spawn(StreamId.LEARNER + i))
        for i in range(n)
    ]


def build_booster(config: ExperimentConfig, learners: Sequence[WeakLearner]) -> Booster:
    if config.algorithm is Algorithm.ONLINE_BBM:
        if config.gamma is None:
            raise ConfigError("online-bbm requires gamma.")
        return OnlineBBM(
            learners,
            gamma=config.gamma,
            feed_mode=config.resolved_feed_mode,
            seed=config.seed,
        )
    if config.algorithm is Algorithm.BASELINE:
        return SingleLearnerBooster(learners[0])
    return AdaBoostOL(learners, feed_mode=config.resolved_feed_mode, seed=config.seed)


def load_examples(config: ExperimentConfig) -> list[Example]:
    if not config.is_generated:
        return list(
            load_dataset(
                config.data,
                config.data_format,
                zero_based=config.zero_based,
                label_column=config.label_column,
                header=config.csv_header,
            )
        )
    if config.data == UNIFORM_SOURCE:
        return uniform_labels(config.num_examples, config.seed)
    name = config.data[len(SYNTHETIC_PREFIX) :]
    return generate(name, config.num_examples, config.seed)


def _revealed(
    oracle: SimulationOracle | None, examples: Iterable[Example]
) -> Iterable[Example]:
    return examples if oracle is None else oracle.track(examples)


@contextlib.contextmanager
def _stage(name: str, config: ExperimentConfig) -> Iterator[None]:
    logger.debug("stage %s", name, extra=STAGE_EXTRA)
    try:
        yield
    except ExperimentError:
        raise
    except Exception as exc:
        context = kvformat(
            algorithm=config.algorithm.value, data=config.data, seed=config.seed
        )
        raise ExperimentError(name, f"{exc} ({context})") from exc


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run one configuration end to end and return its report.

    Any failure is re-raised as [ExperimentError][online_boosting.exceptions.ExperimentError]
    naming the stage, with the original exception chained.
    """
    started = time.perf_counter()
    logger.debug("run_experiment %s", kvformat(**config.to_dict()))

    with _stage("load", config):
        examples = load_examples(config)
    with _stage("split", config):
        train, test = split_shuffle(examples, config.split, config.seed)
    with _stage("build", config):
        oracle = SimulationOracle() if config.weak_learner is WeakLearnerKind.COIN else None
        booster = build_booster(config, build_learners(config, oracle=oracle))
    with _stage("train", config):
        progress = progressive_validate(
            booster, _revealed(oracle, train), config.checkpoint_every(len(train))
        )
    with _stage("evaluate", config):
        test_loss = evaluate(booster, _revealed(oracle, test))
    with _stage("report", config):
        report = ExperimentReport(
            config=config.to_dict(),
            examples_seen=progress.examples,
            mistakes=progress.mistakes,
            train_loss=progress.loss,
            checkpoints=[tuple(point) for point in progress.checkpoints],
            test_loss=test_loss,
            edges=booster.edge_statistics().edges_or_none(),
            diagnostics=booster.diagnostics(),
            duration_seconds=time.perf_counter() - started,
        )
    logger.debug(
        "experiment_done %s",
        kvformat(train_loss=report.train_loss, test_loss=test_loss),
    )
    return report


def parallel_map(
    function: Callable[[_In], _Out], items: Sequence[_In], jobs: int = 1
) -> list[_Out]:
    """Apply `function` to every item, in a process pool when `jobs > 1`.

    Results keep the order of `items`.
    """
    if jobs < 1:
        raise ConfigError(f"jobs must be at least 1, got {jobs}.")
    if jobs == 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(function, items))


def run_experiments(
    configs: Sequence[ExperimentConfig], jobs: int = 1
) -> list[ExperimentReport]:
    return parallel_map(run_experiment, configs, jobs)
