"""Bundled generative datasets whose labels are majorities of their features.

A single feature is a weak predictor on each of them, while a vote over many features is
close to the best possible classifier, so they show whether a booster really combines its
weak learners.
"""

from __future__ import annotations

import typing

import numpy as np

from ..core import Example, Label, RngHandle, StreamId
from ..exceptions import ConfigError

if typing.TYPE_CHECKING:
    from collections.abc import Callable


def _labels(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.integers(0, 2, size=n) * 2 - 1


def _flip(rng: np.random.Generator, labels: np.ndarray, rate: float) -> np.ndarray:
    return np.where(rng.random(labels.size) < rate, -labels, labels)


def noisy_copies(
    rng: np.random.Generator, n: int, *, features: int = 21, accuracy: float = 0.65
) -> tuple[np.ndarray, np.ndarray]:
    """Every `+-1` feature independently equals the label with probability `accuracy`."""
    labels = _labels(rng, n)
    agree = rng.random((n, features)) < accuracy
    return np.where(agree, labels[:, None], -labels[:, None]), labels


def majority_vote(
    rng: np.random.Generator, n: int, *, features: int = 11, noise: float = 0.05
) -> tuple[np.ndarray, np.ndarray]:
    """Uniform `+-1` features; the label is their majority, flipped at rate `noise`."""
    x = rng.integers(0, 2, size=(n, features)) * 2 - 1
    return x, _flip(rng, np.where(x.sum(axis=1) >= 0, 1, -1), noise)


def sparse_majority(
    rng: np.random.Generator,
    n: int,
    *,
    relevant: int = 9,
    irrelevant: int = 41,
    density: float = 0.5,
    background: float = 0.1,
) -> tuple[np.ndarray, np.ndarray]:
    """Binary features; the label says whether most of the `relevant` ones are set."""
    on = rng.random((n, relevant)) < density
    noise = rng.random((n, irrelevant)) < background
    labels = np.where(on.sum(axis=1) * 2 > relevant, 1, -1)
    return np.hstack([on, noise]).astype(np.float64), labels


def gaussian_majority(
    rng: np.random.Generator, n: int, *, features: int = 15, shift: float = 0.5
) -> tuple[np.ndarray, np.ndarray]:
    """Each feature is `label * shift` plus standard normal noise."""
    labels = _labels(rng, n)
    return labels[:, None] * shift + rng.standard_normal((n, features)), labels


DATASETS: dict[str, Callable[[np.random.Generator, int], tuple[np.ndarray, np.ndarray]]] = {
    "noisy-copies": noisy_copies,
    "majority-vote": majority_vote,
    "sparse-majority": sparse_majority,
    "gaussian-majority": gaussian_majority,
}


def to_examples(x: np.ndarray, labels: np.ndarray) -> list[Example]:
    return [
        Example(
            {int(index): float(row[index]) for index in np.flatnonzero(row)},
            Label(int(label)),
        )
        for row, label in zip(x, labels)
    ]


def generate(name: str, n: int, seed: int) -> list[Example]:
    try:
        make = DATASETS[name]
    except KeyError:
        choices = ", ".join(DATASETS)
        raise ConfigError(
            f"Unknown synthetic dataset {name!r}; expected one of: {choices}."
        ) from None
    x, labels = make(RngHandle(seed, StreamId.SYNTHETIC).generator, n)
    return to_examples(x, labels)


def uniform_labels(n: int, seed: int) -> list[Example]:
    """A feature-less stream of independent, uniformly random labels."""
    labels = _labels(RngHandle(seed, StreamId.LABELS).generator, n)
    return [Example({}, Label(int(label))) for label in labels]
