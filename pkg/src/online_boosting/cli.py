from __future__ import annotations

import contextlib
import enum
import functools
import typing
from pathlib import Path

import click

from .__version__ import __version__
from .core import FeedMode
from .exceptions import OnlineBoostingException
from .harness.config import (
    Algorithm,
    DataFormat,
    ExperimentConfig,
    SimulationKind,
    WeakLearnerKind,
)
from .harness.experiment import parallel_map, run_experiments
from .harness.report import batch_document
from .harness.simulation import run_lower_bound_sim
from .utils.logging import LOG_LEVELS, configure_logging

if typing.TYPE_CHECKING:
    from collections.abc import Iterator

    from .harness.report import ExperimentReport

INDEX_BASES: dict[str, bool | typing.Literal["auto"]] = {
    "0": True,
    "1": False,
    "auto": "auto",
}


def _choice(kind: type[enum.Enum]) -> click.Choice:
    return click.Choice([member.value for member in kind])


@contextlib.contextmanager
def _diagnostics() -> Iterator[None]:
    try:
        yield
    except OnlineBoostingException as exc:
        raise click.ClickException(str(exc)) from exc


def _emit(reports: list[ExperimentReport], report_out: Path | None) -> None:
    document = batch_document(reports)
    if report_out is None:
        click.echo(document)
    else:
        report_out.write_text(document + "\n")


seed_option = click.option(
    "--seed",
    "seeds",
    type=click.IntRange(0, 2**64 - 1),
    multiple=True,
    default=(0,),
    show_default=True,
    help="Seed for every random stream; repeat to run several seeds.",
)
jobs_option = click.option(
    "--jobs", type=click.IntRange(min=1), default=1, show_default=True,
    help="Independent runs to execute in parallel.",
)
report_option = click.option(
    "--report-out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write the JSON report here instead of standard output.",
)
feed_mode_option = click.option(
    "--feed-mode", type=_choice(FeedMode), default=None,
    help="Hand examples to weak learners as importance weights or by sampling.",
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="online-boosting")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Log package events to standard error.",
)
def main(log_level: str | None) -> None:
    """Online boosting experiments: Online BBM and AdaBoost.OL."""
    if log_level is not None:
        configure_logging(log_level)


@main.command()
@click.option("--algorithm", type=_choice(Algorithm), required=True)
@click.option(
    "--weak-learner", type=_choice(WeakLearnerKind), default="stump", show_default=True
)
@click.option("--num-learners", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--gamma", type=float, default=None, help="Assumed edge (online-bbm only).")
@feed_mode_option
@seed_option
@jobs_option
@click.option(
    "--data",
    required=True,
    help="Dataset path, 'synthetic:<name>' or 'uniform'.",
)
@click.option("--format", "data_format", type=_choice(DataFormat), default="svmlight")
@click.option("--split", type=float, default=0.8, show_default=True)
@click.option("--checkpoint-interval", type=click.IntRange(min=1), default=None)
@click.option("--coin-p", type=float, default=None)
@click.option("--coin-phase1", type=click.IntRange(min=0), default=None)
@click.option("--num-examples", type=click.IntRange(min=1), default=5000, show_default=True)
@click.option(
    "--index-base", type=click.Choice(list(INDEX_BASES)), default="0", show_default=True
)
@click.option("--label-column", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--header/--no-header", default=False, help="Skip the first csv row.")
@click.option("--learning-rate", type=float, default=0.5, show_default=True)
@report_option
def run(
    *,
    algorithm: str,
    weak_learner: str,
    num_learners: int,
    gamma: float | None,
    feed_mode: str | None,
    seeds: tuple[int, ...],
    jobs: int,
    data: str,
    data_format: str,
    split: float,
    checkpoint_interval: int | None,
    coin_p: float | None,
    coin_phase1: int | None,
    num_examples: int,
    index_base: str,
    label_column: int,
    header: bool,
    learning_rate: float,
    report_out: Path | None,
) -> None:
    """Train on a split of the data with progressive validation, then test."""
    with _diagnostics():
        base = ExperimentConfig(
            algorithm=Algorithm(algorithm),
            data=data,
            weak_learner=WeakLearnerKind(weak_learner),
            num_learners=num_learners,
            gamma=gamma,
            feed_mode=None if feed_mode is None else FeedMode(feed_mode),
            seed=seeds[0],
            data_format=DataFormat(data_format),
            split=split,
            checkpoint_interval=checkpoint_interval,
            coin_p=coin_p,
            coin_phase1=coin_phase1,
            num_examples=num_examples,
            zero_based=INDEX_BASES[index_base],
            label_column=label_column,
            csv_header=header,
            learning_rate=learning_rate,
        )
        reports = run_experiments([base.with_seed(seed) for seed in seeds], jobs)
    _emit(reports, report_out)


@main.command()
@click.option("--kind", type=_choice(SimulationKind), required=True)
@click.option("--algorithm", type=_choice(Algorithm), default="online-bbm", show_default=True)
@click.option("--gamma", type=float, required=True, help="Coin edge: p = 1/2 + 2 gamma.")
@click.option(
    "--excess-loss", type=click.FloatRange(min=0), default=0.0, show_default=True,
    help="S; the guessing phase lasts S / (4 gamma) rounds.",
)
@click.option("--num-learners", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--rounds", type=click.IntRange(min=1), default=5000, show_default=True)
@feed_mode_option
@seed_option
@jobs_option
@report_option
def simulate(
    *,
    kind: str,
    algorithm: str,
    gamma: float,
    excess_loss: float,
    num_learners: int,
    rounds: int,
    feed_mode: str | None,
    seeds: tuple[int, ...],
    jobs: int,
    report_out: Path | None,
) -> None:
    """Run boosters over simulated coin learners on uniformly random labels."""
    with _diagnostics():
        simulation = functools.partial(
            run_lower_bound_sim,
            SimulationKind(kind),
            gamma,
            excess_loss,
            num_learners,
            rounds,
            algorithm=Algorithm(algorithm),
            feed_mode=None if feed_mode is None else FeedMode(feed_mode),
        )
        reports = parallel_map(simulation, list(seeds), jobs)
    _emit(reports, report_out)
