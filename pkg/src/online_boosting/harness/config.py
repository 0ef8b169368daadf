from __future__ import annotations

import dataclasses
import enum
import math
import typing
from dataclasses import dataclass

from ..core import FeedMode
from ..exceptions import ConfigError

UNIFORM_SOURCE = "uniform"
SYNTHETIC_PREFIX = "synthetic:"


class Algorithm(str, enum.Enum):
    ONLINE_BBM = "online-bbm"
    ADABOOST_OL = "adaboost-ol"
    ADABOOST_OL_S = "adaboost-ol-s"
    BASELINE = "baseline"


class WeakLearnerKind(str, enum.Enum):
    STUMP = "stump"
    LINEAR = "linear"
    COIN = "coin"


class DataFormat(str, enum.Enum):
    SVMLIGHT = "svmlight"
    CSV = "csv"


class SimulationKind(str, enum.Enum):
    CONSTANT_EDGE = "constant-edge"
    TWO_PHASE = "two-phase"


_E = typing.TypeVar("_E", bound=enum.Enum)


def coerce_enum(kind: type[_E], value: typing.Any, field: str) -> _E:
    try:
        return kind(value)
    except ValueError:
        choices = ", ".join(member.value for member in kind)
        raise ConfigError(
            f"Unknown {field} {value!r}; expected one of: {choices}."
        ) from None


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one experiment.

    Validation happens on construction: an invalid combination raises
    [ConfigError][online_boosting.exceptions.ConfigError] before any data is read.
    """

    algorithm: Algorithm
    """Booster to run. `baseline` runs a single weak learner through the same protocol."""

    data: str
    """A dataset path, `synthetic:<name>` for a bundled generator, or `uniform`.

    `uniform` is a label-only stream of uniformly random labels and is the only source coin
    learners accept.
    """

    weak_learner: WeakLearnerKind = WeakLearnerKind.STUMP

    num_learners: int = 10

    gamma: float | None = None
    """Assumed weak-learner edge. Required by `online-bbm`, rejected by every other
    algorithm."""

    feed_mode: FeedMode | None = None
    """Weighted or sampled feeding; `None` picks the algorithm's default.

    `adaboost-ol-s` always samples.
    """

    seed: int = 0

    data_format: DataFormat = DataFormat.SVMLIGHT

    split: float = 0.8
    """Fraction of the shuffled examples used for training."""

    checkpoint_interval: int | None = None
    """Examples between loss checkpoints; defaults to `ceil(T / 100)`."""

    coin_p: float | None = None
    """Probability that a coin learner is right, after any guessing phase."""

    coin_phase1: int | None = None
    """Rounds of pure guessing before coin learners switch to `coin_p`."""

    num_examples: int = 5000
    """Stream length for generated sources; ignored for files."""

    zero_based: bool | typing.Literal["auto"] = True
    """svmlight index base: keep indices, subtract one (`False`) or detect (`"auto"`)."""

    label_column: int = 0

    csv_header: bool = False

    learning_rate: float = 0.5
    """Base step size of linear weak learners."""

    def __post_init__(self) -> None:
        self.algorithm = coerce_enum(Algorithm, self.algorithm, "algorithm")
        self.weak_learner = coerce_enum(WeakLearnerKind, self.weak_learner, "weak learner")
        self.data_format = coerce_enum(DataFormat, self.data_format, "data format")
        if self.feed_mode is not None:
            self.feed_mode = coerce_enum(FeedMode, self.feed_mode, "feed mode")
        self._validate()

    def _validate(self) -> None:
        if self.num_learners < 1:
            raise ConfigError(f"num_learners must be at least 1, got {self.num_learners}.")
        if not 0 < self.split < 1:
            raise ConfigError(f"split must lie in (0, 1), got {self.split}.")
        if self.checkpoint_interval is not None and self.checkpoint_interval < 1:
            raise ConfigError("checkpoint_interval must be positive.")
        if self.num_examples < 1:
            raise ConfigError("num_examples must be positive.")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}.")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive.")
        if self.label_column < 0:
            raise ConfigError("label_column must be non-negative.")
        if self.zero_based not in (True, False, "auto"):
            raise ConfigError(f"zero_based must be True, False or 'auto', got {self.zero_based!r}.")

        if self.algorithm is Algorithm.ONLINE_BBM:
            if self.gamma is None:
                raise ConfigError("online-bbm requires gamma.")
            if not 0 < self.gamma < 0.5:
                raise ConfigError(f"gamma must lie in (0, 1/2), got {self.gamma}.")
        elif self.gamma is not None:
            raise ConfigError(
                f"{self.algorithm.value} is parameter-free and does not accept gamma."
            )
        if self.algorithm is Algorithm.ADABOOST_OL_S and self.feed_mode is FeedMode.WEIGHTED:
            raise ConfigError("adaboost-ol-s always samples; weighted feeding conflicts.")
        if self.algorithm is Algorithm.BASELINE and self.num_learners != 1:
            raise ConfigError("baseline runs exactly one weak learner.")

        if self.weak_learner is WeakLearnerKind.COIN:
            if self.data != UNIFORM_SOURCE:
                raise ConfigError(
                    f"Coin learners need the '{UNIFORM_SOURCE}' source, got {self.data!r}."
                )
            if self.coin_p is None:
                raise ConfigError("Coin learners require coin_p.")
            if not 0 <= self.coin_p <= 1:
                raise ConfigError(f"coin_p must lie in [0, 1], got {self.coin_p}.")
            if self.coin_phase1 is not None and self.coin_phase1 < 0:
                raise ConfigError("coin_phase1 must be non-negative.")
        elif self.coin_p is not None or self.coin_phase1 is not None:
            raise ConfigError("coin_p and coin_phase1 only apply to coin learners.")

    @property
    def resolved_feed_mode(self) -> FeedMode:
        if self.algorithm is Algorithm.ADABOOST_OL_S:
            return FeedMode.SAMPLED
        return self.feed_mode or FeedMode.WEIGHTED

    @property
    def is_generated(self) -> bool:
        return self.data == UNIFORM_SOURCE or self.data.startswith(SYNTHETIC_PREFIX)

    def checkpoint_every(self, total: int) -> int:
        if self.checkpoint_interval is not None:
            return self.checkpoint_interval
        return max(1, math.ceil(total / 100))

    def with_seed(self, seed: int) -> ExperimentConfig:
        return dataclasses.replace(self, seed=seed)

    def to_dict(self) -> dict[str, typing.Any]:
        return {
            field.name: _plain(getattr(self, field.name))
            for field in dataclasses.fields(self)
        }


def _plain(value: typing.Any) -> typing.Any:
    return value.value if isinstance(value, enum.Enum) else value
