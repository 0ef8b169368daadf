from __future__ import annotations

import contextlib
import logging
import os
import typing

import online_boosting.utils.logging
from online_boosting.core import Example, Label

if typing.TYPE_CHECKING:
    from collections.abc import Iterable


@contextlib.contextmanager
def override_log_level(log_level: str) -> typing.Iterator[None]:
    os.environ["ONLINE_BOOSTING_LOG_LEVEL"] = log_level

    # Force a reload on the logging handlers
    factory = online_boosting.utils.logging._logger_factory
    factory._initialized = False  # type: ignore[attr-defined]
    online_boosting.utils.logging.get_logger("online_boosting")

    try:
        yield
    finally:
        # Reset the logger so we don't have verbose output in all unit tests
        del os.environ["ONLINE_BOOSTING_LOG_LEVEL"]
        logging.getLogger("online_boosting").handlers = []
        logging.getLogger("online_boosting").setLevel(logging.NOTSET)
        factory._handler = None


def examples(rows: Iterable[tuple[dict[int, float], int]]) -> list[Example]:
    return [Example(features, Label(label)) for features, label in rows]


class FixedLearner:
    """A weak learner that always casts the same vote and records every update."""

    def __init__(self, vote: int) -> None:
        self.vote = Label(vote)
        self.updates: list[tuple[Label, float]] = []

    def predict(self, features: typing.Any) -> Label:
        return self.vote

    def update(self, features: typing.Any, label: Label, weight: float) -> None:
        self.updates.append((label, weight))
