"""Simulated lower-bound and weak-learning experiments with coin learners.

Labels are uniformly random and every weak learner is an independent coin that is right
with a scheduled probability. With the two-phase schedule nobody can beat guessing during
the first `T0 = S / (4 gamma)` rounds, which is what makes the excess loss `S` unavoidable.
"""

from __future__ import annotations

import time
import typing
from dataclasses import dataclass

import numpy as np

from ..bbm import OnlineBBM
from ..core import Label, RngHandle, StreamId
from ..exceptions import ConfigError
from ..utils.logging import get_logger
from ..utils.misc import kvformat
from ..weak_learners import (
    CoinLearner,
    ConstantSchedule,
    SimulationOracle,
    TwoPhaseSchedule,
    sampled_feed,
)
from .config import (
    UNIFORM_SOURCE,
    Algorithm,
    ExperimentConfig,
    SimulationKind,
    WeakLearnerKind,
    coerce_enum,
)
from .experiment import build_booster, build_learners
from .protocol import progressive_validate
from .report import ExperimentReport
from .synthetic import uniform_labels

if typing.TYPE_CHECKING:
    from collections.abc import Sequence

    from ..core import FeedMode

logger = get_logger(__name__)


def _check_edge(gamma: float) -> None:
    if not 0 < gamma < 0.25:
        raise ConfigError(f"Simulations need gamma in (0, 1/4), got {gamma!r}.")


def simulation_config(
    kind: SimulationKind | str,
    *,
    gamma: float,
    excess_loss: float,
    num_learners: int,
    rounds: int,
    seed: int = 0,
    algorithm: Algorithm | str = Algorithm.ONLINE_BBM,
    feed_mode: FeedMode | None = None,
) -> ExperimentConfig:
    """The experiment configuration a lower-bound simulation runs under."""
    _check_edge(gamma)
    if excess_loss < 0:
        raise ConfigError(f"excess_loss must be non-negative, got {excess_loss!r}.")
    kind = coerce_enum(SimulationKind, kind, "simulation kind")
    algorithm = coerce_enum(Algorithm, algorithm, "algorithm")
    if kind is SimulationKind.TWO_PHASE:
        schedule = TwoPhaseSchedule.from_excess_loss(gamma, excess_loss)
        p, phase_one = schedule.p, schedule.phase_one_rounds
    else:
        p, phase_one = ConstantSchedule.with_edge(gamma).p, None
    return ExperimentConfig(
        algorithm=algorithm,
        data=UNIFORM_SOURCE,
        weak_learner=WeakLearnerKind.COIN,
        num_learners=num_learners,
        gamma=gamma if algorithm is Algorithm.ONLINE_BBM else None,
        feed_mode=feed_mode,
        seed=seed,
        coin_p=p,
        coin_phase1=phase_one,
        num_examples=rounds,
    )


def run_lower_bound_sim(
    kind: SimulationKind | str,
    gamma: float,
    excess_loss: float,
    num_learners: int,
    rounds: int,
    seed: int = 0,
    algorithm: Algorithm | str = Algorithm.ONLINE_BBM,
    *,
    feed_mode: FeedMode | None = None,
) -> ExperimentReport:
    """Run a booster over coin learners on uniformly random labels.

    `phases` in the report holds the mistake fraction over all rounds (`overall`) and, for
    the two-phase schedule, before and after `T0` (`phase_one`, `phase_two`).
    """
    config = simulation_config(
        kind,
        gamma=gamma,
        excess_loss=excess_loss,
        num_learners=num_learners,
        rounds=rounds,
        seed=seed,
        algorithm=algorithm,
        feed_mode=feed_mode,
    )
    started = time.perf_counter()
    oracle = SimulationOracle()
    booster = build_booster(config, build_learners(config, oracle=oracle))
    stream = uniform_labels(rounds, seed)
    progress = progressive_validate(
        booster, oracle.track(stream), config.checkpoint_every(rounds)
    )

    phases = {"overall": progress.loss}
    phase_one = config.coin_phase1
    if phase_one:
        phases["phase_one"] = _fraction(progress.outcomes[:phase_one])
        if rounds > phase_one:
            phases["phase_two"] = _fraction(progress.outcomes[phase_one:])

    diagnostics = booster.diagnostics()
    if isinstance(booster, OnlineBBM):
        diagnostics["mistake_bound"] = booster.family.mistake_bound(rounds, excess_loss)
    logger.debug(
        "lower_bound_sim %s", kvformat(kind=SimulationKind(kind).value, **phases)
    )
    return ExperimentReport(
        config={**config.to_dict(), "excess_loss": excess_loss},
        examples_seen=progress.examples,
        mistakes=progress.mistakes,
        train_loss=progress.loss,
        checkpoints=[tuple(point) for point in progress.checkpoints],
        edges=booster.edge_statistics().edges_or_none(),
        diagnostics=diagnostics,
        phases=phases,
        duration_seconds=time.perf_counter() - started,
    )


def _fraction(outcomes: Sequence[bool]) -> float:
    return sum(outcomes) / len(outcomes)


@dataclass(frozen=True)
class WeakLearningCheck:
    gamma: float
    score: float
    """`w . z`, the weighted agreement of the coin with the labels."""

    l1: float
    linf: float
    fed: int
    """How many examples `sampled_feed` actually passed to the learner."""

    @property
    def slack(self) -> float:
        """`(w . z - gamma |w|_1) / |w|_inf`; bounded below by a constant for a weak learner."""
        return (self.score - self.gamma * self.l1) / self.linf


def run_weak_learning_check(
    gamma: float,
    rounds: int,
    seed: int = 0,
    weights: Sequence[float] | np.ndarray | None = None,
) -> WeakLearningCheck:
    """Measure a coin learner's importance-weighted edge under a weight sequence.

    The coin is right with probability `1/2 + 2 gamma`. Each round it is fed through
    `sampled_feed` with probability `w_t / |w|_inf`; its prediction is scored with `w_t`.
    Without explicit `weights`, they are drawn uniformly from `[0, 1)`.
    """
    _check_edge(gamma)
    root = RngHandle(seed)
    if weights is None:
        w = root.spawn(StreamId.SYNTHETIC).generator.random(rounds)
    else:
        w = np.asarray(weights, dtype=np.float64)
        if w.size != rounds or (w < 0).any():
            raise ValueError("weights must hold `rounds` non-negative values")
    linf = float(w.max()) if w.size else 0.0
    if linf <= 0:
        raise ValueError("weights must contain a positive value")

    oracle = SimulationOracle()
    learner = CoinLearner.for_simulation(
        oracle, ConstantSchedule.with_edge(gamma), root.spawn(StreamId.LEARNER)
    )
    feed_rng = root.spawn(StreamId.FEED)
    agreements = np.empty(rounds)
    fed = 0
    for t, example in enumerate(oracle.track(uniform_labels(rounds, seed))):
        y = int(example.label)
        agreements[t] = y * int(learner.predict(example.features))
        fed += sampled_feed(learner, example.features, Label(y), float(w[t]) / linf, feed_rng)
    return WeakLearningCheck(
        gamma=gamma,
        score=float(w @ agreements),
        l1=float(w.sum()),
        linf=linf,
        fed=fed,
    )
