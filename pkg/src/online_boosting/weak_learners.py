"""Weak online learners.

Every learner honours the same contract: `predict(x)` returns a label without changing
what the learner will predict next, and `update(x, y, p)` learns from `(x, y)` scaled by
an importance weight `p` in `[0, 1]`. An update with `p = 0` is a no-op.

Boosters choose between two ways of handing examples over (see
[FeedMode][online_boosting.core.FeedMode]): [weighted_feed][] always calls
`update(x, y, p)`, while [sampled_feed][] calls `update(x, y, 1)` with probability `p`.

[weighted_feed]: online_boosting.weak_learners.weighted_feed
[sampled_feed]: online_boosting.weak_learners.sampled_feed
"""

from __future__ import annotations

import math
import typing
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .core import FeedMode, Label, bernoulli, check_probability, sign
from .exceptions import ContractViolation
from .utils.misc import dense, grow

if typing.TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from .core import Example, Features, RngHandle


DEFAULT_LEARNING_RATE = 0.5


@typing.runtime_checkable
class WeakLearner(typing.Protocol):
    def predict(self, features: Features) -> Label: ...

    def update(self, features: Features, label: Label, weight: float) -> None: ...


class StumpLearner:
    """Online decision stump.

    For every feature it keeps the importance-weighted class-conditional means; the
    feature's rule thresholds at the midpoint of the two means and votes for the class
    whose mean lies on the example's side. Each rule's weighted mistakes are counted
    online (before the example is absorbed) and the stump predicts with the feature
    whose rule has made the fewest, lowest index first on ties.

    Absent features count as `0`, so a feature first seen late starts with the mistakes
    its degenerate always-`+1` rule would have made: the negative weight seen so far.
    """

    def __init__(self) -> None:
        # Row 0 holds negative-class sums, row 1 positive-class sums.
        self._sums = np.zeros((2, 0))
        self._class_weight = np.zeros(2)
        self._mistakes = np.zeros(0)
        self._rule: tuple[int, float, float] | None = None

    @property
    def best_feature(self) -> int | None:
        return None if self._rule is None else self._rule[0]

    @property
    def mistakes(self) -> np.ndarray:
        return self._mistakes.copy()

    def class_means(self) -> np.ndarray:
        weight = self._class_weight[:, None]
        return np.divide(
            self._sums,
            weight,
            out=np.zeros_like(self._sums),
            where=weight > 0,
        )

    def predict(self, features: Features) -> Label:
        if self._rule is None:
            return Label.POSITIVE
        index, threshold, direction = self._rule
        return sign((features.get(index, 0.0) - threshold) * direction)

    def update(self, features: Features, label: Label, weight: float) -> None:
        check_probability(weight)
        if weight == 0:
            return

        size = max(self._mistakes.size, max(features, default=-1) + 1)
        self._sums = grow(self._sums, size)
        self._mistakes = grow(self._mistakes, size, fill=self._class_weight[0])
        values = dense(features.items(), size)

        means = self.class_means()
        thresholds = means.sum(axis=0) / 2
        directions = means[1] - means[0]
        votes = np.where((values - thresholds) * directions >= 0, 1, -1)
        self._mistakes += weight * (votes != label)

        row = 1 if label == Label.POSITIVE else 0
        self._sums[row] += weight * values
        self._class_weight[row] += weight

        best = int(np.argmin(self._mistakes))
        means = self.class_means()
        self._rule = (
            best,
            float(means[:, best].sum() / 2),
            float(means[1, best] - means[0, best]),
        )


class LinearLearner:
    """Online logistic regression with importance weights.

    `update` takes one gradient step on `p * log(1 + exp(-y * m))` with step size
    `learning_rate / sqrt(n)`, `n` counting the updates with non-zero weight.

    The margin is the inner product of weights and features. A bias term is learned only
    with `fit_bias=True`; without it an empty example always scores `0` and predicts `+1`.
    """

    def __init__(
        self, learning_rate: float = DEFAULT_LEARNING_RATE, *, fit_bias: bool = False
    ) -> None:
        if learning_rate <= 0:
            raise ValueError(f"Learning rate must be positive, got {learning_rate!r}.")
        self.learning_rate = learning_rate
        self.fit_bias = fit_bias
        self.weights: dict[int, float] = {}
        self.bias = 0.0
        self.updates = 0

    def margin(self, features: Features) -> float:
        weights = self.weights
        return self.bias + sum(
            weights.get(index, 0.0) * value for index, value in features.items()
        )

    def predict(self, features: Features) -> Label:
        return sign(self.margin(features))

    def update(self, features: Features, label: Label, weight: float) -> None:
        check_probability(weight)
        if weight == 0:
            return
        self.updates += 1
        step = self.learning_rate / math.sqrt(self.updates)
        scale = step * weight * label * float(expit(-label * self.margin(features)))
        for index, value in features.items():
            self.weights[index] = self.weights.get(index, 0.0) + scale * value
        if self.fit_bias:
            self.bias += scale


class CoinSchedule(typing.Protocol):
    def __call__(self, t: int) -> float: ...


@dataclass(frozen=True)
class ConstantSchedule:
    """Emit the true label with the same probability `p` on every round."""

    p: float

    def __post_init__(self) -> None:
        check_probability(self.p)

    @classmethod
    def with_edge(cls, gamma: float) -> ConstantSchedule:
        return cls(0.5 + 2 * gamma)

    def __call__(self, t: int) -> float:
        return self.p


@dataclass(frozen=True)
class TwoPhaseSchedule:
    """Pure guessing (`p = 1/2`) for the first `phase_one_rounds`, then `p`."""

    phase_one_rounds: int
    p: float

    def __post_init__(self) -> None:
        check_probability(self.p)
        if self.phase_one_rounds < 0:
            raise ValueError("phase_one_rounds must be non-negative")

    @classmethod
    def from_excess_loss(cls, gamma: float, excess_loss: float) -> TwoPhaseSchedule:
        """Build the schedule with `T0 = S / (4 gamma)` and `p = 1/2 + 2 gamma`."""
        if not 0 < gamma < 0.25:
            raise ValueError(f"gamma must lie in (0, 1/4), got {gamma!r}")
        phase_one = math.floor(round(excess_loss / (4 * gamma), 9))
        return cls(phase_one, 0.5 + 2 * gamma)

    def __call__(self, t: int) -> float:
        return 0.5 if t <= self.phase_one_rounds else self.p


class SimulationOracle:
    """The simulated environment's view of the current round's true label."""

    def __init__(self) -> None:
        self.round = 0
        self._label: Label | None = None

    def reveal(self, label: Label) -> None:
        self.round += 1
        self._label = Label(label)

    @property
    def label(self) -> Label:
        if self._label is None:
            raise ContractViolation(
                "No simulation round is open; coin learners only predict inside a "
                "simulation that reveals each label first."
            )
        return self._label

    def track(self, examples: Iterable[Example]) -> Iterator[Example]:
        """Reveal each example's label, then hand the example on."""
        for example in examples:
            self.reveal(example.label)
            yield example
        self._label = None


class CoinLearner:
    """Simulated weak learner that is right with a scheduled probability.

    On round `t` it returns the true label with probability `schedule(t)`, independently
    of every other coin. It needs the true label at prediction time, so it only works
    inside a simulation: build it with [for_simulation][online_boosting.weak_learners.CoinLearner.for_simulation].
    """

    def __init__(
        self,
        schedule: CoinSchedule,
        rng: RngHandle,
        *,
        oracle: SimulationOracle | None = None,
    ) -> None:
        self.schedule = schedule
        self.rng = rng
        self.oracle = oracle
        self.fed_weight = 0.0
        self._cached: tuple[int, Label] | None = None

    @classmethod
    def for_simulation(
        cls, oracle: SimulationOracle, schedule: CoinSchedule, rng: RngHandle
    ) -> CoinLearner:
        return cls(schedule, rng, oracle=oracle)

    def predict_label(self, t: int, true_label: Label) -> Label:
        p = check_probability(self.schedule(t))
        return true_label if self.rng.random() < p else Label(-true_label)

    def predict(self, features: Features) -> Label:
        if self.oracle is None:
            raise ContractViolation(
                "CoinLearner.predict() needs a SimulationOracle; "
                "use CoinLearner.for_simulation()."
            )
        t = self.oracle.round
        # One draw per round, however many times the booster asks.
        if self._cached is None or self._cached[0] != t:
            self._cached = (t, self.predict_label(t, self.oracle.label))
        return self._cached[1]

    def update(self, features: Features, label: Label, weight: float) -> None:
        check_probability(weight)
        self.fed_weight += weight


def weighted_feed(
    learner: WeakLearner, features: Features, label: Label, p: float
) -> None:
    check_probability(p)
    learner.update(features, label, p)


def sampled_feed(
    learner: WeakLearner,
    features: Features,
    label: Label,
    p: float,
    rng: RngHandle,
) -> bool:
    """Pass `(features, label)` with probability `p` and unit weight.

    Returns whether the example was passed.
    """
    if bernoulli(p, rng):
        learner.update(features, label, 1.0)
        return True
    return False


def feed(
    mode: FeedMode,
    learner: WeakLearner,
    features: Features,
    label: Label,
    p: float,
    rng: RngHandle,
) -> None:
    if mode is FeedMode.SAMPLED:
        sampled_feed(learner, features, label, p, rng)
    else:
        weighted_feed(learner, features, label, p)
