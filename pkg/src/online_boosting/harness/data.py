"""Dataset ingestion and the train/test split.

svmlight lines look like `<label> <index>:<value> ... # comment`. Blank lines and
comments are skipped and `qid:` pairs are ignored. Labels in `{0, 1}` are mapped to
`{-1, +1}` (see [Label.parse][online_boosting.core.Label.parse]).
"""

from __future__ import annotations

import csv
import typing
from pathlib import Path

import numpy as np

from ..core import Example, Label, RngHandle, StreamId
from ..exceptions import DatasetParseError, EmptyDataset, LabelError
from ..utils.logging import get_logger
from ..utils.misc import ceil_fraction
from .config import DataFormat

if typing.TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

logger = get_logger(__name__)

ZeroBased = typing.Union[bool, typing.Literal["auto"]]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_label(raw: str, *, path: str, line: int) -> Label:
    try:
        return Label.parse(raw)
    except ValueError:
        raise LabelError(f"unknown label {raw!r}", path=path, line=line) from None


def _pairs(fields: Iterable[str], *, path: str, line: int) -> Iterator[tuple[int, float]]:
    for field in fields:
        index, sep, value = field.partition(":")
        if not sep:
            raise DatasetParseError(f"expected index:value, got {field!r}", path=path, line=line)
        if index == "qid":
            continue
        try:
            yield int(index), float(value)
        except ValueError:
            raise DatasetParseError(
                f"malformed feature {field!r}", path=path, line=line
            ) from None


def _has_zero_index(path: Path) -> bool:
    with path.open() as lines:
        for number, line in enumerate(lines, start=1):
            fields = _strip_comment(line).split()
            if any(index == 0 for index, _ in _pairs(fields[1:], path=str(path), line=number)):
                return True
    return False


def load_svmlight(path: str | Path, *, zero_based: ZeroBased = True) -> Iterator[Example]:
    """Yield the examples of an svmlight file in file order.

    With `zero_based=True` indices are kept as written; with `False` they are shifted
    down by one; with `"auto"` the file is scanned first and shifted only when no index
    is `0`.
    """
    path = Path(path)
    name = str(path)
    if zero_based == "auto":
        zero_based = _has_zero_index(path)
    offset = 0 if zero_based else 1

    count = 0
    with path.open() as lines:
        for number, line in enumerate(lines, start=1):
            fields = _strip_comment(line).split()
            if not fields:
                continue
            label = _parse_label(fields[0], path=name, line=number)
            features: dict[int, float] = {}
            for index, value in _pairs(fields[1:], path=name, line=number):
                if index - offset < 0:
                    raise DatasetParseError(
                        f"feature index {index} below the index base {offset}",
                        path=name,
                        line=number,
                    )
                if index - offset in features:
                    raise DatasetParseError(
                        f"duplicate feature index {index}", path=name, line=number
                    )
                features[index - offset] = value
            try:
                example = Example(features, label)
            except ValueError as exc:
                raise DatasetParseError(str(exc), path=name, line=number) from None
            count += 1
            yield example
    if count == 0:
        raise EmptyDataset(f"{name} holds no examples.")
    logger.debug("load_svmlight path=%s examples=%d", name, count)


def load_csv(
    path: str | Path,
    *,
    label_column: int = 0,
    header: bool = False,
    delimiter: str = ",",
) -> Iterator[Example]:
    """Yield the rows of a delimited file as examples.

    The remaining columns, in order, become features `0, 1, ...`; zero values are dropped.
    """
    path = Path(path)
    name = str(path)
    count = 0
    with path.open(newline="") as handle:
        rows = csv.reader(handle, delimiter=delimiter)
        for number, row in enumerate(rows, start=1):
            if header and number == 1:
                continue
            if not any(cell.strip() for cell in row):
                continue
            if label_column >= len(row):
                raise DatasetParseError(
                    f"no label column {label_column} in a row of {len(row)}",
                    path=name,
                    line=number,
                )
            label = _parse_label(row[label_column].strip(), path=name, line=number)
            cells = row[:label_column] + row[label_column + 1 :]
            try:
                values = [float(cell) for cell in cells]
                example = Example(
                    {index: value for index, value in enumerate(values) if value != 0},
                    label,
                )
            except ValueError as exc:
                raise DatasetParseError(str(exc), path=name, line=number) from None
            count += 1
            yield example
    if count == 0:
        raise EmptyDataset(f"{name} holds no examples.")
    logger.debug("load_csv path=%s examples=%d", name, count)


def load_dataset(
    path: str | Path,
    data_format: DataFormat | str = DataFormat.SVMLIGHT,
    *,
    zero_based: ZeroBased = True,
    label_column: int = 0,
    header: bool = False,
) -> Iterator[Example]:
    data_format = DataFormat(data_format)
    if data_format is DataFormat.CSV:
        return load_csv(path, label_column=label_column, header=header)
    return load_svmlight(path, zero_based=zero_based)


def split_shuffle(
    stream: Iterable[Example], fraction: float, seed: int
) -> tuple[list[Example], list[Example]]:
    """Shuffle with the seed's data stream and cut after `ceil(fraction * n)` examples."""
    if not 0 < fraction < 1:
        raise ValueError(f"Split fraction must lie in (0, 1), got {fraction!r}.")
    examples: Sequence[Example] = list(stream)
    train, test = split_indices(len(examples), fraction, seed)
    return [examples[i] for i in train], [examples[i] for i in test]


def split_indices(n: int, fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """The index partition [split_shuffle][online_boosting.harness.data.split_shuffle] uses."""
    order = RngHandle(seed, StreamId.DATA_SHUFFLE).generator.permutation(n)
    cut = ceil_fraction(fraction, n)
    return order[:cut], order[cut:]
