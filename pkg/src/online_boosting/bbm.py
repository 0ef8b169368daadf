"""Potential-based online boosting and Online BBM.

A potential family is a sequence of `N + 1` non-increasing functions `Phi_0 .. Phi_N`
with `Phi_N(s) >= 1{s <= 0}` and, for every layer `i`,

    Phi_{i-1}(s) >= (1/2 - gamma/2) Phi_i(s - 1) + (1/2 + gamma/2) Phi_i(s + 1).

The booster votes with `alpha = 1` for every weak learner and feeds learner `i` with
probability `w / sup(w)`, where `w = Phi_i(s - 1) - Phi_i(s + 1)` is evaluated at the
margin `s` of the learners before it.

Boost-by-majority makes the recurrence tight: `Phi_i(s)` is the probability that `N - i`
flips of a coin with heads probability `1/2 + gamma/2` show at most `(N - i - s) / 2`
heads, and the weight is the probability of exactly `floor((N - i - s + 1) / 2)` heads.
Everything is evaluated in log space from a cached log-factorial table.

Note:
    Weights here are the plain binomial probabilities, i.e. twice the
    `(Phi(s - 1) - Phi(s + 1)) / 2` form of the analysis. Feed probabilities are
    normalised by the supremum, so the factor cancels.
"""

from __future__ import annotations

import functools
import math
import typing

import numpy as np
from scipy.special import gammaln

from .core import (
    EdgeStatistics,
    FeedMode,
    Label,
    RngHandle,
    RoundGuard,
    StreamId,
    sign,
)
from .utils.logging import get_logger
from .weak_learners import feed

if typing.TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .core import Features
    from .weak_learners import WeakLearner

logger = get_logger(__name__)

LOG_2 = math.log(2.0)


@functools.lru_cache(maxsize=None)
def _log_factorials(size: int) -> np.ndarray:
    return gammaln(np.arange(size) + 1.0)


def log_factorials(n: int) -> np.ndarray:
    """Return a table whose entry `k` is `log(k!)`, valid for every `k <= n`."""
    return _log_factorials(1 << n.bit_length())


@functools.lru_cache(maxsize=512)
def log_binomial_pmf(m: int, gamma: float) -> np.ndarray:
    """Log-probabilities of `0..m` heads in `m` flips with heads probability `(1+gamma)/2`."""
    table = log_factorials(m)
    heads = np.arange(m + 1)
    log_up = math.log1p(gamma) - LOG_2
    log_down = math.log1p(-gamma) - LOG_2
    return (
        table[m]
        - table[heads]
        - table[m - heads]
        + heads * log_up
        + (m - heads) * log_down
    )


@functools.lru_cache(maxsize=512)
def log_binomial_cdf(m: int, gamma: float) -> np.ndarray:
    return np.logaddexp.accumulate(log_binomial_pmf(m, gamma))


def _check_gamma(gamma: float) -> None:
    if not 0 <= gamma < 0.5:
        raise ValueError(f"gamma must lie in [0, 1/2), got {gamma!r}")


def potential(m: int, s: int, gamma: float) -> float:
    """BBM potential with `m` learners still to vote and current margin `s`."""
    if m < 0:
        raise ValueError(f"Remaining learner count must be non-negative, got {m!r}")
    heads = (m - s) // 2
    if heads < 0:
        return 0.0
    if heads >= m:
        return 1.0
    return float(np.exp(log_binomial_cdf(m, gamma)[heads]))


def bbm_weight(m: int, s_prev: int, gamma: float) -> float:
    """BBM weight with `m` learners after this one and previous margin `s_prev`."""
    if m < 0:
        raise ValueError(f"Remaining learner count must be non-negative, got {m!r}")
    heads = (m - s_prev + 1) // 2
    if heads < 0 or heads > m:
        return 0.0
    return float(np.exp(log_binomial_pmf(m, gamma)[heads]))


def reachable_margins(layer: int) -> np.ndarray:
    """Margins the first `layer - 1` learners can produce: parity of `layer - 1`."""
    return np.arange(-(layer - 1), layer, 2)


def weight_sup(m: int, gamma: float, num_learners: int | None = None) -> float:
    """Maximum of [bbm_weight][online_boosting.bbm.bbm_weight] over reachable margins.

    With `num_learners`, only margins reachable at layer `num_learners - m` count;
    without it, every margin does (the binomial mode).
    """
    log_pmf = log_binomial_pmf(m, gamma)
    if num_learners is None:
        return float(np.exp(log_pmf.max()))
    layer = num_learners - m
    if layer < 1:
        raise ValueError(f"m={m} leaves no layer among {num_learners} learners")
    heads = (m - reachable_margins(layer) + 1) // 2
    heads = heads[(heads >= 0) & (heads <= m)]
    return float(np.exp(log_pmf[heads].max()))


class PotentialFamily(typing.Protocol):
    gamma: float
    num_learners: int

    def potential(self, layer: int, s: int) -> float: ...

    def weight(self, layer: int, s_prev: int) -> float: ...

    def weight_bound(self, layer: int) -> float: ...


class PotentialTable:
    """BBM potentials and weights for a fixed `(gamma, N)`.

    Weights for every layer and margin in `[-N, N]`, and each layer's supremum over
    reachable margins, are precomputed once (`O(N^2)`); the table is immutable afterwards.
    """

    def __init__(self, gamma: float, num_learners: int) -> None:
        _check_gamma(gamma)
        if num_learners < 1:
            raise ValueError(f"Need at least one learner, got {num_learners!r}")
        self.gamma = gamma
        self.num_learners = n = num_learners

        margins = np.arange(-n, n + 1)
        weights: list[list[float]] = []
        sups: list[float] = []
        for layer in range(1, n + 1):
            m = n - layer
            heads = (m - margins + 1) // 2
            valid = (heads >= 0) & (heads <= m)
            row = np.zeros(margins.size)
            row[valid] = np.exp(log_binomial_pmf(m, gamma)[heads[valid]])
            weights.append(row.tolist())
            sups.append(weight_sup(m, gamma, n))
        self._weights = weights
        self.weight_sups = tuple(sups)

    def potential(self, layer: int, s: int) -> float:
        return potential(self.num_learners - layer, s, self.gamma)

    def weight(self, layer: int, s_prev: int) -> float:
        offset = s_prev + self.num_learners
        if 0 <= offset < len(self._weights[layer - 1]):
            return self._weights[layer - 1][offset]
        return bbm_weight(self.num_learners - layer, s_prev, self.gamma)

    def weight_bound(self, layer: int) -> float:
        return self.weight_sups[layer - 1]

    @property
    def initial_potential(self) -> float:
        return self.potential(0, 0)

    def mistake_bound(self, rounds: int, excess_loss: float) -> float:
        """`Phi_0(0) * T + S * sum_i sup(w^i)`: the scheme's high-probability bound."""
        return self.initial_potential * rounds + excess_loss * sum(self.weight_sups)


def check_potential_family(
    family: PotentialFamily,
    margins: Iterable[int] | None = None,
    *,
    tolerance: float = 1e-12,
) -> list[str]:
    """Return every way `family` breaks the potential-family conditions.

    An empty list means the family is valid on the checked margins (default `[-N, N]`).
    """
    n = family.num_learners
    low, high = 0.5 - family.gamma / 2, 0.5 + family.gamma / 2
    points = list(range(-n, n + 1) if margins is None else margins)
    violations = []
    for s in points:
        if family.potential(n, s) < (1.0 if s <= 0 else 0.0) - tolerance:
            violations.append(f"Phi_{n}({s}) is below the 0-1 loss")
    for layer in range(n + 1):
        values = [family.potential(layer, s) for s in points]
        violations.extend(
            f"Phi_{layer} increases between s={a} and s={b}"
            for a, b, va, vb in zip(points, points[1:], values, values[1:])
            if b > a and vb > va + tolerance
        )
    for layer in range(1, n + 1):
        for s in points:
            blend = low * family.potential(layer, s - 1) + high * family.potential(
                layer, s + 1
            )
            if family.potential(layer - 1, s) < blend - tolerance:
                violations.append(f"Phi_{layer - 1}({s}) is below the one-step blend")
    return violations


def _normalise(weight: float, bound: float) -> float:
    return min(1.0, weight / bound) if bound > 0 else 0.0


class PotentialBooster:
    """Online boosting driven by an arbitrary potential family.

    Each round the booster predicts the sign of the unweighted vote. On `observe` it walks
    the learners in order, feeding learner `i` with probability
    `weight(i, s_prev) / weight_bound(i)` where `s_prev` is the agreement margin of the
    learners before it.
    """

    def __init__(
        self,
        learners: Sequence[WeakLearner],
        family: PotentialFamily,
        *,
        feed_mode: FeedMode = FeedMode.WEIGHTED,
        seed: int = 0,
    ) -> None:
        if len(learners) != family.num_learners:
            raise ValueError(
                f"{len(learners)} learners given for a family over "
                f"{family.num_learners}"
            )
        self.learners = list(learners)
        self.family = family
        self.feed_mode = FeedMode(feed_mode)
        root = RngHandle(seed)
        self._feed_rngs = [
            root.spawn(StreamId.FEED + i) for i in range(len(self.learners))
        ]
        self._round: RoundGuard[tuple[list[Label], Label]] = RoundGuard()
        self._edges = EdgeStatistics(len(self.learners))
        self._mistakes = 0
        self._rounds = 0

    @property
    def mistakes(self) -> int:
        return self._mistakes

    @property
    def rounds(self) -> int:
        return self._rounds

    def predict(self, features: Features) -> Label:
        votes = [learner.predict(features) for learner in self.learners]
        prediction = sign(sum(votes))
        self._round.open(features, (votes, prediction))
        return prediction

    def feed_probability(self, layer: int, s_prev: int) -> float:
        return _normalise(
            self.family.weight(layer, s_prev), self.family.weight_bound(layer)
        )

    def observe(self, features: Features, label: Label) -> None:
        votes, prediction = self._round.close(features)
        y = int(label)
        mode = self.feed_mode
        weight, bound = self.family.weight, self.family.weight_bound
        weights = np.empty(len(votes))
        agreements = np.empty(len(votes))

        s_prev = 0
        for index, (learner, vote, rng) in enumerate(
            zip(self.learners, votes, self._feed_rngs)
        ):
            layer = index + 1
            w = weight(layer, s_prev)
            p = _normalise(w, bound(layer))
            feed(mode, learner, features, label, p, rng)
            z = y * int(vote)
            weights[index] = w
            agreements[index] = z
            s_prev += z

        self._edges.record(weights, agreements)
        self._rounds += 1
        if prediction != label:
            self._mistakes += 1
        logger.trace(
            "potential_round t=%d prediction=%d label=%d margin=%d",
            self._rounds,
            prediction,
            y,
            s_prev,
        )

    def edge_statistics(self) -> EdgeStatistics:
        return self._edges

    def edges(self) -> np.ndarray:
        return self._edges.edges()

    def diagnostics(self) -> dict[str, typing.Any]:
        n = self.family.num_learners
        return {
            "initial_potential": self.family.potential(0, 0),
            "weight_bound_sum": sum(
                self.family.weight_bound(layer) for layer in range(1, n + 1)
            ),
        }


class OnlineBBM(PotentialBooster):
    """Online boost-by-majority.

    `gamma` is the assumed edge of the weak learners and is required: the algorithm does
    not adapt to the learners it is given.
    """

    family: PotentialTable

    def __init__(
        self,
        learners: Sequence[WeakLearner],
        *,
        gamma: float,
        feed_mode: FeedMode = FeedMode.WEIGHTED,
        seed: int = 0,
    ) -> None:
        super().__init__(
            learners,
            PotentialTable(gamma, len(learners)),
            feed_mode=feed_mode,
            seed=seed,
        )
        self.gamma = gamma
        logger.debug(
            "online_bbm gamma=%s learners=%d feed_mode=%s",
            gamma,
            len(learners),
            self.feed_mode.value,
        )
