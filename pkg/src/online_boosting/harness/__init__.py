from .config import Algorithm, DataFormat, ExperimentConfig, SimulationKind, WeakLearnerKind
from .data import load_csv, load_dataset, load_svmlight, split_shuffle
from .experiment import run_experiment, run_experiments
from .protocol import evaluate, progressive_validate
from .report import ExperimentReport, batch_document
from .simulation import run_lower_bound_sim, run_weak_learning_check
from .synthetic import generate, uniform_labels

__all__ = [
    "Algorithm",
    "DataFormat",
    "ExperimentConfig",
    "ExperimentReport",
    "SimulationKind",
    "WeakLearnerKind",
    "batch_document",
    "evaluate",
    "generate",
    "load_csv",
    "load_dataset",
    "load_svmlight",
    "progressive_validate",
    "run_experiment",
    "run_experiments",
    "run_lower_bound_sim",
    "run_weak_learning_check",
    "split_shuffle",
    "uniform_labels",
]
