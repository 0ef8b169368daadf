"""Miscellaneous utilities and helper functions."""

from __future__ import annotations

import math
import typing

import numpy as np

if typing.TYPE_CHECKING:
    from collections.abc import Iterable


def kvformat(**kwargs: typing.Any) -> str:
    return " ".join(f"{key}={value}" for key, value in kwargs.items())


def ceil_fraction(fraction: float, total: int) -> int:
    """Return `ceil(fraction * total)`, immune to float noise such as `0.7 * 10`."""
    return min(total, math.ceil(round(fraction * total, 9)))


def grow(array: np.ndarray, size: int, *, fill: float = 0.0) -> np.ndarray:
    """Return `array` padded along its last axis to at least `size` entries."""
    current = array.shape[-1]
    if size <= current:
        return array
    padding = [(0, 0)] * (array.ndim - 1) + [(0, size - current)]
    return np.pad(array, padding, constant_values=fill)


def dense(features: Iterable[tuple[int, float]], size: int) -> np.ndarray:
    """Scatter sparse `(index, value)` pairs into a zero vector of length `size`."""
    vector = np.zeros(size)
    for index, value in features:
        vector[index] = value
    return vector
