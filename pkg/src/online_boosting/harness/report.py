from __future__ import annotations

import json
import typing
from dataclasses import asdict, dataclass, field

if typing.TYPE_CHECKING:
    from collections.abc import Sequence

SCHEMA_VERSION = 1
TIMING_FIELDS = frozenset({"duration_seconds"})


@dataclass
class ExperimentReport:
    """The machine-readable outcome of one experiment or simulation.

    Reports are compared field by field in tests: everything except `duration_seconds`
    is a deterministic function of the configuration.
    """

    config: dict[str, typing.Any]
    examples_seen: int
    mistakes: int
    train_loss: float
    """Final progressive-validation 0-1 loss on the training stream."""

    checkpoints: list[tuple[int, float]] = field(default_factory=list)
    """`(examples, progressive loss)` pairs, in increasing example count."""

    test_loss: float | None = None
    edges: list[float | None] = field(default_factory=list)
    """Per-learner weighted edges; `None` for a learner that never received weight."""

    diagnostics: dict[str, typing.Any] = field(default_factory=dict)
    phases: dict[str, float] | None = None
    """Phase-wise mistake fractions of a lower-bound simulation."""

    duration_seconds: float = 0.0
    schema: int = SCHEMA_VERSION

    def to_dict(self, *, timing: bool = True) -> dict[str, typing.Any]:
        document = asdict(self)
        document["checkpoints"] = [list(point) for point in self.checkpoints]
        if not timing:
            for name in TIMING_FIELDS:
                document.pop(name)
        return document

    def to_json(self, *, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing), indent=2, sort_keys=True)


def batch_document(reports: Sequence[ExperimentReport]) -> str:
    """One report as-is, several wrapped as `{"schema": 1, "reports": [...]}`."""
    if len(reports) == 1:
        return reports[0].to_json()
    return json.dumps(
        {"schema": SCHEMA_VERSION, "reports": [report.to_dict() for report in reports]},
        indent=2,
        sort_keys=True,
    )

