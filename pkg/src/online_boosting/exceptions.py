from __future__ import annotations

import typing

# Exceptions with custom constructors define `__reduce__` to stay picklable.


class OnlineBoostingException(Exception):
    pass


class InvalidProbability(OnlineBoostingException, ValueError):
    """Raised when a probability or importance weight falls outside `[0, 1]`."""

    def __init__(self, value: float) -> None:
        super().__init__(f"Expected a probability in [0, 1], got {value!r}.")
        self.value = value

    def __reduce__(self) -> tuple[typing.Any, ...]:
        return type(self), (self.value,)


class ProtocolViolation(OnlineBoostingException):
    """Raised when a booster's predict/observe alternation is broken."""


class ContractViolation(OnlineBoostingException):
    """Raised when a simulation-only learner is used outside a simulation round."""


class UndefinedEdge(OnlineBoostingException):
    """Raised when an edge is requested for a learner that never received weight."""

    def __init__(self, learner: int) -> None:
        super().__init__(
            f"Weak learner {learner} has zero accumulated weight; its edge is undefined."
        )
        self.learner = learner

    def __reduce__(self) -> tuple[typing.Any, ...]:
        return type(self), (self.learner,)


class ConfigError(OnlineBoostingException, ValueError):
    """Raised when an experiment configuration is invalid."""


class DatasetError(OnlineBoostingException):
    pass


class DatasetParseError(DatasetError):
    """Raised when a dataset line cannot be parsed."""

    def __init__(self, message: str, *, path: str, line: int) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.message = message
        self.path = path
        self.line = line

    def __reduce__(self) -> tuple[typing.Any, ...]:
        return _rebuild_parse_error, (type(self), self.message, self.path, self.line)


def _rebuild_parse_error(
    cls: type[DatasetParseError], message: str, path: str, line: int
) -> DatasetParseError:
    return cls(message, path=path, line=line)


class LabelError(DatasetParseError):
    """Raised when a dataset line carries a label outside `{-1, 0, +1}`."""


class EmptyDataset(DatasetError):
    """Raised when a dataset (or one side of a split) holds no examples."""


class ExperimentError(OnlineBoostingException):
    """Raised when a stage of an experiment fails.

    The original exception is always chained as `__cause__`.
    """

    def __init__(self, stage: str, detail: str) -> None:
        super().__init__(f"experiment failed at stage {stage!r}: {detail}")
        self.stage = stage
        self.detail = detail

    def __reduce__(self) -> tuple[typing.Any, ...]:
        return type(self), (self.stage, self.detail)
