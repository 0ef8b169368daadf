import pickle

import pytest

from online_boosting.exceptions import (
    ConfigError,
    DatasetParseError,
    ExperimentError,
    InvalidProbability,
    LabelError,
    OnlineBoostingException,
    UndefinedEdge,
)


@pytest.mark.parametrize(
    "exc",
    [
        InvalidProbability(1.5),
        UndefinedEdge(3),
        DatasetParseError("malformed feature 'x:1'", path="a.svm", line=4),
        LabelError("unknown label '2'", path="a.svm", line=1),
        ExperimentError("load", "a.svm holds no examples."),
        ConfigError("split must lie in (0, 1), got 1.0."),
    ],
)
def test_survives_pickling(exc: OnlineBoostingException) -> None:
    restored = pickle.loads(pickle.dumps(exc))
    assert type(restored) is type(exc)
    assert str(restored) == str(exc)


def test_parse_error_fields() -> None:
    exc = LabelError("unknown label '2'", path="a.svm", line=7)
    assert str(exc) == "a.svm:7: unknown label '2'"
    assert (exc.path, exc.line) == ("a.svm", 7)
    assert isinstance(exc, DatasetParseError)


def test_value_error_compatibility() -> None:
    assert isinstance(InvalidProbability(-1), ValueError)
    assert isinstance(ConfigError("bad"), ValueError)
