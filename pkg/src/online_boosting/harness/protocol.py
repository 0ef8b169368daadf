"""Progressive validation and held-out evaluation.

Progressive validation predicts every example before the booster learns from it, so the
running mistake fraction is an honest estimate of online performance.
"""

from __future__ import annotations

import typing
from dataclasses import dataclass, field

from ..exceptions import EmptyDataset
from ..utils.logging import CHECKPOINT_EXTRA, get_logger
from ..utils.misc import kvformat

if typing.TYPE_CHECKING:
    from collections.abc import Iterable

    from ..core import Booster, Example

logger = get_logger(__name__)


class Checkpoint(typing.NamedTuple):
    examples: int
    loss: float


@dataclass
class ProgressiveResult:
    outcomes: list[bool] = field(default_factory=list)
    """One flag per example, `True` where the prediction was wrong."""

    checkpoints: list[Checkpoint] = field(default_factory=list)

    @property
    def examples(self) -> int:
        return len(self.outcomes)

    @property
    def mistakes(self) -> int:
        return sum(self.outcomes)

    @property
    def loss(self) -> float:
        return self.mistakes / self.examples if self.outcomes else 0.0


def progressive_validate(
    booster: Booster, stream: Iterable[Example], checkpoint_interval: int
) -> ProgressiveResult:
    """Predict, record, then observe, for every example in order.

    A checkpoint is emitted every `checkpoint_interval` examples and after the last one.
    """
    if checkpoint_interval < 1:
        raise ValueError(f"Checkpoint interval must be positive, got {checkpoint_interval!r}.")
    result = ProgressiveResult()
    mistakes = 0
    for example in stream:
        wrong = booster.predict(example.features) != example.label
        result.outcomes.append(wrong)
        mistakes += wrong
        booster.observe(example.features, example.label)
        seen = len(result.outcomes)
        if seen % checkpoint_interval == 0:
            _checkpoint(result, seen, mistakes)
    seen = len(result.outcomes)
    if seen and (not result.checkpoints or result.checkpoints[-1].examples != seen):
        _checkpoint(result, seen, mistakes)
    return result


def _checkpoint(result: ProgressiveResult, seen: int, mistakes: int) -> None:
    point = Checkpoint(seen, mistakes / seen)
    result.checkpoints.append(point)
    logger.debug(
        "checkpoint %s",
        kvformat(examples=point.examples, loss=f"{point.loss:.4f}"),
        extra=CHECKPOINT_EXTRA,
    )


def evaluate(booster: Booster, stream: Iterable[Example]) -> float:
    """Held-out mistake fraction; the booster only predicts."""
    examples = mistakes = 0
    for example in stream:
        examples += 1
        mistakes += booster.predict(example.features) != example.label
    if examples == 0:
        raise EmptyDataset("Cannot evaluate on an empty test set.")
    return mistakes / examples
