"""AdaBoost.OL: adaptive, parameter-free online boosting with logistic loss.

Expert `i` predicts `sign(sum_{j <= i} alpha^j * WL^j(x))`. Per round:

* Hedge picks the expert whose prediction is emitted, with probability proportional to
  `exp(-M^i)`, `M^i` being expert `i`'s mistakes so far.
* Weak learner `i` gets the logistic weight `w = 1 / (1 + exp(s^{i-1}))` of the margin
  of expert `i - 1`, as an importance weight or as a sampling probability.
* `alpha^i` takes one projected online gradient step on the logistic loss with
  `eta_t = 4 / sqrt(t)`, staying in `[-2, 2]`.

Nothing is tuned: there is deliberately no edge parameter anywhere in this module.
"""

from __future__ import annotations

import math
import typing

import numpy as np
from scipy.special import expit, softmax

from .core import (
    EdgeStatistics,
    FeedMode,
    Label,
    RngHandle,
    RoundGuard,
    StreamId,
)
from .utils.logging import get_logger
from .weak_learners import feed

if typing.TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

    from .core import Features
    from .weak_learners import WeakLearner

logger = get_logger(__name__)

ALPHA_BOUND = 2.0
# Keeps logistic weights inside the open interval (0, 1) once exp() saturates.
_SMALLEST_WEIGHT = float(np.finfo(np.float64).tiny)
_LARGEST_WEIGHT = float(np.nextafter(1.0, 0.0))

_ArrayT = typing.TypeVar("_ArrayT", float, np.ndarray)


def logistic_weight(s: _ArrayT) -> _ArrayT:
    """Negative derivative of `log(1 + exp(-s))`, i.e. `1 / (1 + exp(s))`."""
    return np.clip(expit(-s), _SMALLEST_WEIGHT, _LARGEST_WEIGHT)  # type: ignore[return-value]


def project(a: _ArrayT) -> _ArrayT:
    return np.clip(a, -ALPHA_BOUND, ALPHA_BOUND)  # type: ignore[return-value]


def ogd_step(alpha: _ArrayT, s_i: _ArrayT, z: npt.ArrayLike, t: int) -> _ArrayT:
    """One projected gradient step on `f(alpha) = log(1 + exp(-(s_prev + alpha z)))`.

    `s_i` is the margin after this learner's vote, `s_prev + alpha * z`.
    """
    if t < 1:
        raise ValueError(f"Round index starts at 1, got {t!r}")
    eta = 4 / math.sqrt(t)
    return project(alpha + eta * np.asarray(z) * expit(-s_i))  # type: ignore[return-value]


def hedge_probs(mistakes: npt.ArrayLike) -> np.ndarray:
    """Normalised `exp(-M)`; adding a constant to every count changes nothing."""
    counts = np.asarray(mistakes, dtype=np.float64)
    if counts.size == 0:
        raise ValueError("Hedge needs at least one expert")
    return softmax(-counts)


class _Round(typing.NamedTuple):
    votes: np.ndarray
    experts: np.ndarray
    chosen: int
    prediction: Label


class AdaBoostOL:
    """The AdaBoost.OL booster.

    `feed_mode=FeedMode.SAMPLED` gives the sampling variant, AdaBoost.OL.S; both share
    every other code path.
    """

    def __init__(
        self,
        learners: Sequence[WeakLearner],
        *,
        feed_mode: FeedMode = FeedMode.WEIGHTED,
        seed: int = 0,
    ) -> None:
        if not learners:
            raise ValueError("AdaBoost.OL needs at least one weak learner")
        n = len(learners)
        self.learners = list(learners)
        self.feed_mode = FeedMode(feed_mode)
        self.alphas = np.zeros(n)
        self.expert_mistakes = np.zeros(n, dtype=np.int64)
        root = RngHandle(seed)
        self._hedge_rng = root.spawn(StreamId.HEDGE)
        self._feed_rngs = [root.spawn(StreamId.FEED + i) for i in range(n)]
        self._round: RoundGuard[_Round] = RoundGuard()
        self._edges = EdgeStatistics(n)
        self._mistakes = 0
        self._rounds = 0
        logger.debug(
            "adaboost_ol learners=%d feed_mode=%s", n, self.feed_mode.value
        )

    @property
    def mistakes(self) -> int:
        return self._mistakes

    @property
    def rounds(self) -> int:
        return self._rounds

    def _pick_expert(self) -> int:
        cumulative = np.cumsum(hedge_probs(self.expert_mistakes))
        draw = self._hedge_rng.random() * cumulative[-1]
        return min(int(np.searchsorted(cumulative, draw, side="right")), len(cumulative) - 1)

    def predict(self, features: Features) -> Label:
        votes = np.array(
            [learner.predict(features) for learner in self.learners], dtype=np.float64
        )
        experts = np.where(np.cumsum(self.alphas * votes) >= 0, 1, -1)
        chosen = self._pick_expert()
        prediction = Label(int(experts[chosen]))
        self._round.open(features, _Round(votes, experts, chosen, prediction))
        return prediction

    def observe(self, features: Features, label: Label) -> None:
        votes, experts, chosen, prediction = self._round.close(features)
        y = int(label)
        t = self._rounds + 1

        agreements = y * votes
        margins = np.cumsum(self.alphas * agreements)
        previous = np.concatenate(([0.0], margins[:-1]))
        weights = logistic_weight(previous)
        self.alphas = ogd_step(self.alphas, margins, agreements, t)

        mode = self.feed_mode
        for learner, weight, rng in zip(self.learners, weights.tolist(), self._feed_rngs):
            feed(mode, learner, features, label, weight, rng)

        self.expert_mistakes += experts != y
        self._edges.record(weights, agreements)
        self._rounds = t
        if prediction != label:
            self._mistakes += 1
        logger.trace(
            "adaboost_ol_round t=%d expert=%d prediction=%d label=%d",
            t,
            chosen,
            prediction,
            y,
        )

    def edge_statistics(self) -> EdgeStatistics:
        return self._edges

    def edges(self) -> np.ndarray:
        return self._edges.edges()

    def edge_report(self) -> np.ndarray:
        """Per-learner weighted edge `w.z / (2 |w|_1)` over the rounds seen so far."""
        return self.edges()

    def diagnostics(self) -> dict[str, typing.Any]:
        n = len(self.learners)
        best = int(self.expert_mistakes.min())
        diagnostics: dict[str, typing.Any] = {
            "alphas": self.alphas.tolist(),
            "expert_mistakes": self.expert_mistakes.tolist(),
            "best_expert_mistakes": best,
            "hedge_bound": 2 * best + 2 * math.log(n),
            "adaptive_bound": None,
        }
        edges = [edge for edge in self._edges.edges_or_none() if edge is not None]
        squared = sum(edge * edge for edge in edges)
        if squared > 0:
            diagnostics["adaptive_bound"] = 2 * self._rounds / squared
        return diagnostics
