"""Domain types and streaming abstractions shared by every booster.

Conventions used throughout the package:

* Labels are strictly `-1` or `+1` ([Label][online_boosting.core.Label]); files using
  `{0, 1}` are mapped at ingestion.
* `sign(0) = +1`, for boosters and weak learners alike.
* Examples are sparse: a mapping from non-negative feature index to a finite value.
* Randomness is split into named streams ([StreamId][online_boosting.core.StreamId]) so
  that, for instance, changing the number of weak learners never perturbs the data shuffle.
"""

from __future__ import annotations

import enum
import math
import typing
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidProbability, ProtocolViolation, UndefinedEdge

Features = Mapping[int, float]
Margin = float

_T = typing.TypeVar("_T")


class Label(enum.IntEnum):
    NEGATIVE = -1
    POSITIVE = 1

    @classmethod
    def parse(cls, raw: str | float) -> Label:
        """Map a raw label onto `{-1, +1}`.

        `1` and `+1` become `POSITIVE`; `0` and `-1` become `NEGATIVE`. Anything else
        raises `ValueError`.
        """
        value = float(raw)
        if value == 1:
            return cls.POSITIVE
        if value in (0, -1):
            return cls.NEGATIVE
        raise ValueError(f"Unknown label value {raw!r}.")


class FeedMode(str, enum.Enum):
    """How a booster hands an example to a weak learner.

    `WEIGHTED` always passes the example with the booster's probability as importance
    weight; `SAMPLED` passes it with that probability and unit weight.
    """

    WEIGHTED = "weighted"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class Example:
    features: Mapping[int, float]
    label: Label

    def __post_init__(self) -> None:
        for index, value in self.features.items():
            if not isinstance(index, (int, np.integer)) or index < 0:
                raise ValueError(f"Feature index must be a non-negative int: {index!r}")
            if not math.isfinite(value):
                raise ValueError(f"Feature {index} has non-finite value {value!r}")
        object.__setattr__(self, "features", dict(self.features))
        object.__setattr__(self, "label", Label(self.label))


def sign(margin: Margin) -> Label:
    return Label.POSITIVE if margin >= 0 else Label.NEGATIVE


class StreamId(enum.IntEnum):
    DATA_SHUFFLE = 0
    HEDGE = 1
    LABELS = 2
    SYNTHETIC = 3
    # Per-learner streams are offset by the learner's zero-based position.
    FEED = 1_000
    LEARNER = 100_000


class RngHandle:
    """A seeded, single-owner random stream.

    Equal `(seed, stream_id)` pairs produce bit-identical draws; distinct stream ids are
    independent children of the same `numpy.random.SeedSequence`.

    Per-round uniforms come from [random][online_boosting.core.RngHandle.random], which
    reads a block buffer; bulk operations (shuffles, dataset synthesis) use `generator`.
    Use one or the other on a given handle, not both.
    """

    __slots__ = ("_buffer", "_position", "generator", "seed", "stream_id")

    block_size = 512

    def __init__(self, seed: int, stream_id: int = 0) -> None:
        if not 0 <= seed < 2**64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {seed!r}.")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.default_rng(sequence)
        self._buffer: list[float] = []
        self._position = 0

    def spawn(self, stream_id: int) -> RngHandle:
        return RngHandle(self.seed, stream_id)

    def random(self) -> float:
        """Return the next uniform draw in `[0, 1)`."""
        if self._position == len(self._buffer):
            self._buffer = self.generator.random(self.block_size).tolist()
            self._position = 0
        value = self._buffer[self._position]
        self._position += 1
        return value

    def __repr__(self) -> str:
        return f"RngHandle(seed={self.seed}, stream_id={self.stream_id})"


def check_probability(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise InvalidProbability(p)
    return p


def bernoulli(p: float, rng: RngHandle) -> bool:
    # One draw per call, whatever p is, so streams stay aligned across runs.
    check_probability(p)
    return rng.random() < p


class EdgeStatistics:
    """Running Σw and Σw·z per weak learner.

    The edge of learner `i` is `Σ w·z / (2 Σ w)`, always within `[-1/2, 1/2]`.
    """

    def __init__(self, num_learners: int) -> None:
        self.total_weight = np.zeros(num_learners)
        self.weighted_agreement = np.zeros(num_learners)

    def record(self, weights: np.ndarray, agreements: np.ndarray) -> None:
        self.total_weight += weights
        self.weighted_agreement += weights * agreements

    def edges(self) -> np.ndarray:
        empty = np.flatnonzero(self.total_weight <= 0)
        if empty.size:
            raise UndefinedEdge(int(empty[0]))
        return self.weighted_agreement / (2 * self.total_weight)

    def edges_or_none(self) -> list[float | None]:
        return [
            float(agreement / (2 * weight)) if weight > 0 else None
            for weight, agreement in zip(self.total_weight, self.weighted_agreement)
        ]


class Booster(typing.Protocol):
    """A strong online learner: strictly alternating `predict` and `observe` calls."""

    @property
    def mistakes(self) -> int: ...

    @property
    def rounds(self) -> int: ...

    def predict(self, features: Features) -> Label: ...

    def observe(self, features: Features, label: Label) -> None: ...

    def edges(self) -> np.ndarray: ...

    def edge_statistics(self) -> EdgeStatistics: ...

    def diagnostics(self) -> dict[str, typing.Any]: ...


class RoundGuard(typing.Generic[_T]):
    """Carries one round's cached predictions from `predict` to `observe`.

    A second `predict` before `observe` replaces the cached round (prediction-only
    passes such as test evaluation rely on this).
    """

    def __init__(self) -> None:
        self._features: Features | None = None
        self._state: _T | None = None

    def open(self, features: Features, state: _T) -> None:
        self._features = features
        self._state = state

    def close(self, features: Features) -> _T:
        if self._state is None or self._features is None:
            raise ProtocolViolation("observe() called without a preceding predict().")
        if features is not self._features and features != self._features:
            raise ProtocolViolation(
                "observe() called with a different example than the last predict()."
            )
        state = self._state
        self._features = None
        self._state = None
        return state
