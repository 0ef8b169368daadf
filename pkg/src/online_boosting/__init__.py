from .__version__ import __version__
from .adaboost_ol import AdaBoostOL
from .bbm import OnlineBBM, PotentialBooster, PotentialTable
from .core import Booster, Example, FeedMode, Label, RngHandle, StreamId, sign
from .weak_learners import (
    CoinLearner,
    ConstantSchedule,
    LinearLearner,
    SimulationOracle,
    StumpLearner,
    TwoPhaseSchedule,
    WeakLearner,
)

__all__ = [
    "AdaBoostOL",
    "Booster",
    "CoinLearner",
    "ConstantSchedule",
    "Example",
    "FeedMode",
    "Label",
    "LinearLearner",
    "OnlineBBM",
    "PotentialBooster",
    "PotentialTable",
    "RngHandle",
    "SimulationOracle",
    "StreamId",
    "StumpLearner",
    "TwoPhaseSchedule",
    "WeakLearner",
    "__version__",
    "sign",
]
